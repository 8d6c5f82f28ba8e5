import json
import math
import os

import numpy as np
import pytest

import masr

ROOT = os.environ.get("MASR_SOURCE_DIR", os.path.join(os.path.dirname(__file__), "..", ".."))


def test_fk_example():
    x, y, heading = masr.endpoint_pose(1.0, np.radians([90.0, -90.0, 0.0]))
    assert (x, y, heading) == pytest.approx((2.0, 1.0, 0.0), abs=1e-12)
    pts = masr.forward_kinematics(1.0, np.radians([90.0, -90.0, 0.0]))
    assert len(pts) == 3
    assert pts[-1] == pytest.approx([2.0, 1.0], abs=1e-12)


def test_jacobian_shape():
    J = masr.jacobian(0.05, np.zeros(10))
    assert J.shape == (2, 10)
    assert J[1, 0] == pytest.approx(0.5)


def test_bounds():
    assert masr.endpoint_error_bound(3, 0.1, 0.1) == pytest.approx(0.0598501, abs=1e-6)
    pos, ori = masr.planar_pose_bounds(3, 0.1, 0.1)
    assert pos == pytest.approx(0.0299625, abs=1e-7)
    assert ori == pytest.approx(0.3)
    with pytest.raises(masr.MasrError):
        masr.endpoint_error_bound(10, 0.05, 0.2)


def test_approximation_ratio():
    one = masr.approximate("cup", 1, 0.1)
    two = masr.approximate("cup", 2, 0.1)
    assert one["verified"] and two["verified"]
    assert one["worst"] <= 0.1
    assert 2 * one["traversals"] == 3 * two["traversals"]
    assert one["empirical_position"] <= masr.endpoint_error_bound(3, 0.1, 0.1)


def test_plan_totals_and_replay():
    text = open(os.path.join(ROOT, "data", "reach_and_return.plan")).read()
    assert masr.summarize_plan(text) == (810.0, 48, 17)
    assert masr.total_time(text) == pytest.approx(142.0, abs=1e-9)
    frames = masr.replay(text)
    scene = masr.Scene.load(os.path.join(ROOT, "scenes", "narrow_pass.json"))
    spec = masr.RobotSpec()
    assert not any(masr.collides(scene, spec, f) for f in frames)


def test_redundancy():
    spec = masr.RobotSpec(3, 1.0, 0.01, math.pi, 1)
    theta, measure, singular = masr.resolve_redundancy(spec, 0.0, 2.0, np.zeros(3), True)
    x, y, _ = masr.endpoint_pose(1.0, theta)
    assert (x, y) == pytest.approx((0.0, 2.0), abs=1e-9)
    assert measure > 0 and not singular


def test_session_protocol():
    s = masr.Session()
    replies = [json.loads(r) for r in s.handle(json.dumps({"type": "drive", "args": {"direction": 1, "duration": 1.0}, "seq": 1}))]
    assert replies[-1]["type"] == "snapshot"
    assert replies[-1]["payload"]["actuator_position"] == pytest.approx(0.6)
    assert json.loads(s.snapshot())["clock"] == pytest.approx(1.0)

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "masr/approximation.hpp"
#include "masr/cost_model.hpp"
#include "masr/error_metrics.hpp"
#include "masr/scene.hpp"
#include "masr/tasks.hpp"
#include "masr/teleop.hpp"

namespace py = pybind11;
using namespace masr;

namespace {

TaskSpec task_by_name(const std::string& name) {
  if (name == "cup") return cup_task();
  if (name == "z") return z_task();
  if (name == "circle") return circle_task();
  return load_task(name);
}

py::dict approximate(const std::string& task_name, int actuators, double delta) {
  const TaskSpec task = task_by_name(task_name);
  const RobotSpec spec = task.robot.value_or(three_link_spec());
  const CSpaceCurve curve = reference_trajectory(task, spec);
  const PiecewiseLinearPath path = approximation_curve(curve, actuators, delta);
  const VerificationResult check = verify_delta_approx(path, curve, delta);
  std::vector<int> joints;
  for (int j = 1; j <= actuators; ++j) joints.push_back(j);
  const TraversalCount count = count_traversals(path, ActuatorPlacement(joints));
  const EndpointError err = empirical_endpoint_error(path, curve, spec);
  py::dict out;
  out["breakpoints"] = path.breakpoints();
  out["active_sets"] = path.active_sets();
  out["verified"] = check.ok;
  out["worst"] = check.worst;
  out["traversals"] = count.steps;
  out["link_moves"] = count.total_link_moves();
  out["empirical_position"] = err.one_sided;
  out["empirical_orientation"] = err.orientation;
  out["reference"] = curve.sample(201);
  return out;
}

}  // namespace

PYBIND11_MODULE(_masr, m) {
  m.doc() = "Kinematics, trajectory approximation and plan replay for serial robots with mobile actuators";

  py::register_exception<Error>(m, "MasrError");

  py::class_<RobotSpec>(m, "RobotSpec")
      .def(py::init<>())
      .def(py::init([](int n, double l, double t, double limit, int m) {
             RobotSpec s{n, l, t, limit, m};
             s.validate();
             return s;
           }),
           py::arg("link_count") = 10, py::arg("link_length") = 0.05, py::arg("link_thickness") = 0.01,
           py::arg("joint_limit") = std::numbers::pi / 4.0, py::arg("actuator_count") = 1)
      .def_readwrite("link_count", &RobotSpec::link_count)
      .def_readwrite("link_length", &RobotSpec::link_length)
      .def_readwrite("link_thickness", &RobotSpec::link_thickness)
      .def_readwrite("joint_limit", &RobotSpec::joint_limit)
      .def_readwrite("actuator_count", &RobotSpec::actuator_count)
      .def("validate", &RobotSpec::validate)
      .def("to_json", [](const RobotSpec& s) { return robot_spec_to_json(s); })
      .def_static("from_json", &robot_spec_from_json);

  m.def("three_link_spec", &three_link_spec);
  m.def("link_orientations", &link_orientations);
  m.def("forward_kinematics",
        py::overload_cast<double, const JointVector&>(&forward_kinematics), py::arg("link_length"),
        py::arg("theta"));
  m.def("endpoint_pose",
        [](double l, const JointVector& theta) {
          const Pose2 p = endpoint_pose(l, theta);
          return py::make_tuple(p.x, p.y, p.heading);
        },
        py::arg("link_length"), py::arg("theta"));
  m.def("jacobian", py::overload_cast<double, const JointVector&>(&jacobian), py::arg("link_length"),
        py::arg("theta"));
  m.def("manipulability", &manipulability, py::arg("link_length"), py::arg("theta"));

  m.def("endpoint_error_bound", &endpoint_error_bound, py::arg("n"), py::arg("link_length"),
        py::arg("delta"));
  m.def("planar_pose_bounds",
        [](int n, double l, double d) {
          const PoseBounds b = planar_pose_bounds(n, l, d);
          return py::make_tuple(b.position, b.orientation);
        },
        py::arg("n"), py::arg("link_length"), py::arg("delta"));
  m.def("orientation_error", &orientation_error);

  m.def("ik_3link",
        [](const RobotSpec& spec, double x, double y, double heading) {
          return ik_3link(spec, {x, y, heading});
        },
        py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("heading"));
  m.def("resolve_redundancy",
        [](const RobotSpec& spec, double x, double y, const JointVector& seed, bool global) {
          RedundancyOptions o;
          if (global) o.mode = RedundancyMode::kGlobal;
          const RedundancyResult r = resolve_redundancy(spec, Point2(x, y), seed, o);
          return py::make_tuple(r.theta, r.manipulability, r.singular);
        },
        py::arg("spec"), py::arg("x"), py::arg("y"), py::arg("seed"), py::arg("global_search") = false);

  m.def("surface_shortest_path", [](const JointVector& a, const JointVector& b, int m) {
    return surface_shortest_path(a, b, m);
  });
  m.def("approximate", &approximate, py::arg("task"), py::arg("actuators"), py::arg("delta"),
        "Approximate a benchmark task (cup, z, circle or a task file) and verify it.");

  m.def("summarize_plan", [](const std::string& text) {
    const PlanSummary s = summarize(parse_plan(text));
    return py::make_tuple(s.turning_degrees, s.translation_links, s.steps);
  });
  m.def("total_time",
        [](const std::string& text, double link_length, double v, double omega_deg, double delay) {
          CostParams p;
          p.translation_speed = v;
          p.rotation_speed = omega_deg * std::numbers::pi / 180.0;
          p.step_delay = delay;
          return total_time(parse_plan(text), p, link_length);
        },
        py::arg("plan_text"), py::arg("link_length") = 0.05, py::arg("speed") = 0.03,
        py::arg("rotation_speed_deg") = 18.0, py::arg("step_delay") = 1.0);
  m.def("replay",
        [](const std::string& text, const RobotSpec& spec) {
          ReplayOptions o;
          o.limits = LimitCheck::kOff;
          const ReplayResult r = replay(parse_plan(text), spec, straight_state(spec), o);
          std::vector<JointVector> frames;
          for (const auto& f : r.frames) frames.push_back(f.theta);
          return frames;
        },
        py::arg("plan_text"), py::arg("spec") = RobotSpec{});

  py::class_<Scene>(m, "Scene")
      .def_static("from_json", &scene_from_json)
      .def_static("load", &load_scene)
      .def_static("narrow_pass", &narrow_pass_scene, py::arg("spec") = RobotSpec{})
      .def("to_json", [](const Scene& s) { return scene_to_json(s); })
      .def_readonly("grasp_radius", &Scene::grasp_radius)
      .def_property_readonly("target_center",
                             [](const Scene& s) { return py::make_tuple(s.target.center.x(), s.target.center.y()); });
  m.def("collides",
        [](const Scene& scene, const RobotSpec& spec, const JointVector& theta) {
          return collides(scene, spec, theta).collides;
        });
  m.def("can_grasp", &can_grasp, py::arg("spec"), py::arg("theta"), py::arg("scene"));

  py::class_<Session>(m, "Session")
      .def(py::init([](const RobotSpec& spec, const Scene& scene) {
             return std::make_unique<Session>(SessionConfig{spec, scene});
           }),
           py::arg("spec") = RobotSpec{}, py::arg("scene") = narrow_pass_scene(RobotSpec{}))
      .def("handle", [](Session& s, const std::string& msg) { return handle_message(s, msg); },
           "Apply one wire-protocol message and return the replies.")
      .def("snapshot", &Session::snapshot_json);
}

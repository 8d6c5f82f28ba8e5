"""Serial robots driven by mobile actuators: kinematics, trajectory
approximation, cost accounting, plan replay and teleoperation sessions."""

from ._masr import *  # noqa: F401,F403
from ._masr import MasrError, RobotSpec, Scene, Session

__all__ = [name for name in dir() if not name.startswith("_")]

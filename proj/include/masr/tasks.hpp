#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "masr/curve.hpp"
#include "masr/robot.hpp"

namespace masr {

enum class ElbowBranch { kUp, kDown };

// Closed-form inverse kinematics of a 3-link arm for the pose (x, y, heading).
// Elbow-up means a negative second joint. Throws ReachabilityError.
JointVector ik_3link(const RobotSpec& spec, const Pose2& target,
                     ElbowBranch branch = ElbowBranch::kUp);

enum class RedundancyMode {
  kNearestToSeed,  // local maximum closest to the seed
  kGlobal,         // largest manipulability over the self-motion
};

struct RedundancyOptions {
  RedundancyMode mode = RedundancyMode::kNearestToSeed;
  std::size_t grid_points = 1024;  // coarse scan per self-motion loop
};

struct RedundancyResult {
  JointVector theta;
  double manipulability = 0.0;
  bool singular = false;  // target at full reach; theta is the unique solution
};

// Position-only inverse kinematics for a 3-link arm choosing the
// configuration on the self-motion manifold that locally maximizes
// det(J J^T). Joint 1 parametrizes the self-motion. Symmetric ties resolve to
// theta_1 >= 0. The result is unwrapped to lie near the seed.
RedundancyResult resolve_redundancy(const RobotSpec& spec, const Point2& target,
                                    const JointVector& seed, const RedundancyOptions& options = {});

// Configuration on the self-motion manifold through `target` with joint 1
// set to `theta1`, or nothing if that joint value is infeasible.
std::optional<JointVector> self_motion_point(const RobotSpec& spec, const Point2& target,
                                             double theta1, ElbowBranch branch);

struct PointToPoint {
  JointVector theta_a;
  JointVector theta_b;
};

// Carry a tool along a segment at a fixed heading.
struct LineTransport {
  Point2 start;
  Point2 end;
  double heading = 0.0;
};

// Polyline through the corners of a letter.
struct TraceZ {
  std::vector<Point2> corners;
};

struct TraceCircle {
  Point2 center;
  double radius = 0.0;
};

using TaskGeometry = std::variant<PointToPoint, LineTransport, TraceZ, TraceCircle>;

struct TaskSpec {
  std::string name;
  TaskGeometry geometry;
  std::size_t samples = 401;
  std::optional<RobotSpec> robot;  // task-specific arm, if any

  void validate() const;
};

TaskSpec cup_task();
TaskSpec z_task();
TaskSpec circle_task();

TaskSpec task_from_json(const std::string& text);
std::string task_to_json(const TaskSpec& task);
TaskSpec load_task(const std::string& path);

struct TrajectoryOptions {
  // Largest c-space jump tolerated between consecutive samples before the
  // trajectory is declared discontinuous.
  double max_jump = 0.3;
};

// Fully actuated reference curve g(u) for a task. Throws TaskError naming
// the failing sample parameter.
CSpaceCurve reference_trajectory(const TaskSpec& task, const RobotSpec& spec,
                                 const TrajectoryOptions& options = {});

// Workspace point traced at parameter u for position tasks.
Point2 task_point(const TaskSpec& task, double u);

}  // namespace masr

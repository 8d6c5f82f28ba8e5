#pragma once

#include <Eigen/Core>

#include <numbers>
#include <string>
#include <vector>

#include "masr/errors.hpp"

namespace masr {

// Relative joint angles theta_1..theta_N in radians, stored unwrapped.
using JointVector = Eigen::VectorXd;
using Point2 = Eigen::Vector2d;
using Jacobian = Eigen::Matrix<double, 2, Eigen::Dynamic>;

// Geometry and limits of a planar chain of equal links.
//
// Defaults describe the 10-link hardware: 5 cm links, 45 degree relative
// joint limit, one mobile actuator. Link thickness is 1 cm so the chain fits
// the 15 mm pass of the bundled scene.
struct RobotSpec {
  int link_count = 10;
  double link_length = 0.05;
  double link_thickness = 0.01;
  double joint_limit = std::numbers::pi / 4.0;
  int actuator_count = 1;

  // Throws ParameterError when an invariant is violated.
  void validate() const;

  // Checks |theta_i| <= joint_limit (plus tolerance). Length must match.
  bool within_limits(const JointVector& theta, double tolerance = 1e-12) const;

  friend bool operator==(const RobotSpec&, const RobotSpec&) = default;
};

// Three 10 cm links with an unrestricted joint range; the benchmark arm.
RobotSpec three_link_spec();

RobotSpec robot_spec_from_json(const std::string& text);
std::string robot_spec_to_json(const RobotSpec& spec);
RobotSpec load_robot_spec(const std::string& path);

// Link indices n_1..n_M of the actuated joints, 1-based.
class ActuatorPlacement {
 public:
  ActuatorPlacement() = default;
  // Sorts the indices; throws PlacementError on duplicates or index < 1.
  explicit ActuatorPlacement(std::vector<int> joints);

  const std::vector<int>& joints() const { return joints_; }
  std::size_t size() const { return joints_.size(); }
  bool contains(int joint) const;

 private:
  std::vector<int> joints_;
};

struct ActuatedSets {
  std::vector<int> actuated;    // J_A
  std::vector<int> unactuated;  // J_U
};

// J_A / J_U split of 1..N. Throws PlacementError for indices outside 1..N.
ActuatedSets actuated_sets(const ActuatorPlacement& placement, int link_count);

// The M-plane through base_point spanned by the actuated axes.
struct ManifoldAnchor {
  JointVector base_point;       // zero at actuated indices
  ActuatorPlacement placement;  // J_A
  double displacement_bound = 2.0 * std::numbers::pi;

  // Builds the anchor through theta for the given actuated set.
  static ManifoldAnchor through(const JointVector& theta, const ActuatorPlacement& placement);
};

constexpr double kManifoldTolerance = 1e-12;

bool manifold_contains(const JointVector& theta, const ManifoldAnchor& anchor);

// Prefix sums alpha_i = theta_1 + ... + theta_i.
JointVector link_orientations(const JointVector& theta);

// Link end points (x_i, y_i), i = 1..N, base at the origin.
std::vector<Point2> forward_kinematics(double link_length, const JointVector& theta);
std::vector<Point2> forward_kinematics(const RobotSpec& spec, const JointVector& theta);

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // Theta_e = alpha_N
};

Pose2 endpoint_pose(double link_length, const JointVector& theta);
Pose2 endpoint_pose(const RobotSpec& spec, const JointVector& theta);

// Column i is d(x_e, y_e)/d theta_i.
Jacobian jacobian(double link_length, const JointVector& theta);
Jacobian jacobian(const RobotSpec& spec, const JointVector& theta);

// det(J J^T); zero at singular configurations such as full extension.
double manipulability(double link_length, const JointVector& theta);

JointVector degrees_to_radians(const JointVector& degrees);

}  // namespace masr

#include "masr/robot.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <json.hpp>

#include "masr/io.hpp"

namespace masr {

namespace {

void require_length(const RobotSpec& spec, const JointVector& theta) {
  if (theta.size() != spec.link_count) {
    std::ostringstream msg;
    msg << "joint vector has " << theta.size() << " entries, robot has " << spec.link_count
        << " links";
    throw DimensionError(msg.str());
  }
}

}  // namespace

void RobotSpec::validate() const {
  if (link_count < 2) throw ParameterError("link_count must be at least 2");
  if (!(link_length > 0.0)) throw ParameterError("link_length must be positive");
  if (!(link_thickness > 0.0)) throw ParameterError("link_thickness must be positive");
  if (!(joint_limit > 0.0) || joint_limit > std::numbers::pi)
    throw ParameterError("joint_limit must lie in (0, pi]");
  if (actuator_count < 1 || actuator_count > link_count)
    throw ParameterError("actuator_count must lie in 1..link_count");
}

bool RobotSpec::within_limits(const JointVector& theta, double tolerance) const {
  require_length(*this, theta);
  return (theta.array().abs() <= joint_limit + tolerance).all();
}

RobotSpec three_link_spec() {
  RobotSpec spec;
  spec.link_count = 3;
  spec.link_length = 0.1;
  spec.link_thickness = 0.01;
  spec.joint_limit = std::numbers::pi;
  spec.actuator_count = 1;
  return spec;
}

RobotSpec robot_spec_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("robot spec: ") + e.what());
  }
  RobotSpec spec;
  try {
    spec.link_count = doc.at("n_links").get<int>();
    spec.link_length = doc.at("link_length_m").get<double>();
    spec.link_thickness = doc.at("thickness_m").get<double>();
    spec.joint_limit = doc.at("joint_limit_rad").get<double>();
    spec.actuator_count = doc.at("n_actuators").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("robot spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string robot_spec_to_json(const RobotSpec& spec) {
  nlohmann::ordered_json doc;
  doc["n_links"] = spec.link_count;
  doc["link_length_m"] = spec.link_length;
  doc["thickness_m"] = spec.link_thickness;
  doc["joint_limit_rad"] = spec.joint_limit;
  doc["n_actuators"] = spec.actuator_count;
  return doc.dump(2);
}

RobotSpec load_robot_spec(const std::string& path) {
  return robot_spec_from_json(read_text_file(path));
}

ActuatorPlacement::ActuatorPlacement(std::vector<int> joints) : joints_(std::move(joints)) {
  std::sort(joints_.begin(), joints_.end());
  if (std::adjacent_find(joints_.begin(), joints_.end()) != joints_.end())
    throw PlacementError("actuator indices must be distinct");
  if (!joints_.empty() && joints_.front() < 1)
    throw PlacementError("actuator indices are 1-based");
}

bool ActuatorPlacement::contains(int joint) const {
  return std::binary_search(joints_.begin(), joints_.end(), joint);
}

ActuatedSets actuated_sets(const ActuatorPlacement& placement, int link_count) {
  ActuatedSets sets;
  for (int j : placement.joints()) {
    if (j < 1 || j > link_count)
      throw PlacementError("actuator index " + std::to_string(j) + " outside 1.." +
                           std::to_string(link_count));
  }
  sets.actuated = placement.joints();
  for (int j = 1; j <= link_count; ++j) {
    if (!placement.contains(j)) sets.unactuated.push_back(j);
  }
  return sets;
}

ManifoldAnchor ManifoldAnchor::through(const JointVector& theta,
                                       const ActuatorPlacement& placement) {
  ManifoldAnchor anchor;
  anchor.base_point = theta;
  anchor.placement = placement;
  for (int j : placement.joints()) {
    if (j < 1 || j > theta.size()) throw PlacementError("actuator index outside joint vector");
    anchor.base_point[j - 1] = 0.0;
  }
  return anchor;
}

bool manifold_contains(const JointVector& theta, const ManifoldAnchor& anchor) {
  if (theta.size() != anchor.base_point.size()) return false;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const int joint = static_cast<int>(i) + 1;
    const double offset = theta[i] - anchor.base_point[i];
    if (anchor.placement.contains(joint)) {
      if (!(std::abs(offset) < anchor.displacement_bound)) return false;
    } else if (std::abs(offset) > kManifoldTolerance) {
      return false;
    }
  }
  return true;
}

JointVector link_orientations(const JointVector& theta) {
  JointVector alpha(theta.size());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    sum += theta[i];
    alpha[i] = sum;
  }
  return alpha;
}

std::vector<Point2> forward_kinematics(double link_length, const JointVector& theta) {
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(theta.size()));
  const JointVector alpha = link_orientations(theta);
  Point2 p = Point2::Zero();
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    p += link_length * Point2(std::cos(alpha[i]), std::sin(alpha[i]));
    points.push_back(p);
  }
  return points;
}

std::vector<Point2> forward_kinematics(const RobotSpec& spec, const JointVector& theta) {
  require_length(spec, theta);
  return forward_kinematics(spec.link_length, theta);
}

Pose2 endpoint_pose(double link_length, const JointVector& theta) {
  if (theta.size() == 0) return {};
  const auto points = forward_kinematics(link_length, theta);
  return {points.back().x(), points.back().y(), theta.sum()};
}

Pose2 endpoint_pose(const RobotSpec& spec, const JointVector& theta) {
  require_length(spec, theta);
  return endpoint_pose(spec.link_length, theta);
}

Jacobian jacobian(double link_length, const JointVector& theta) {
  const Eigen::Index n = theta.size();
  const JointVector alpha = link_orientations(theta);
  Jacobian jac(2, n);
  // Suffix sums: column i collects links i..N.
  double sx = 0.0;
  double sy = 0.0;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    sx += -link_length * std::sin(alpha[k]);
    sy += link_length * std::cos(alpha[k]);
    jac(0, k) = sx;
    jac(1, k) = sy;
  }
  return jac;
}

Jacobian jacobian(const RobotSpec& spec, const JointVector& theta) {
  require_length(spec, theta);
  return jacobian(spec.link_length, theta);
}

double manipulability(double link_length, const JointVector& theta) {
  const Jacobian jac = jacobian(link_length, theta);
  const Eigen::Matrix2d jjt = jac * jac.transpose();
  return jjt.determinant();
}

JointVector degrees_to_radians(const JointVector& degrees) {
  return degrees * (std::numbers::pi / 180.0);
}

}  // namespace masr

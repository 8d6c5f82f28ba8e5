#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "masr/robot.hpp"
#include "oracles.hpp"

using namespace masr;
using std::numbers::pi;

namespace {

JointVector vec(std::initializer_list<double> v) {
  JointVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST(Robot, LinkOrientationsArePrefixSums) {
  EXPECT_TRUE(link_orientations(vec({pi / 2, -pi / 2, 0})).isApprox(vec({pi / 2, 0, 0})));
  EXPECT_TRUE(link_orientations(vec({pi / 4, pi / 4})).isApprox(vec({pi / 4, pi / 2})));
}

TEST(Robot, ForwardKinematicsExample) {
  const auto p = forward_kinematics(1.0, vec({pi / 2, -pi / 2, 0}));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[0].x(), 0, 1e-15);
  EXPECT_NEAR(p[0].y(), 1, 1e-15);
  EXPECT_NEAR(p[1].x(), 1, 1e-15);
  EXPECT_NEAR(p[2].x(), 2, 1e-15);
  EXPECT_NEAR(p[2].y(), 1, 1e-15);
  const Pose2 e = endpoint_pose(1.0, vec({pi / 2, -pi / 2, 0}));
  EXPECT_NEAR(e.x, 2, 1e-15);
  EXPECT_NEAR(e.y, 1, 1e-15);
  EXPECT_NEAR(e.heading, 0, 1e-15);
}

TEST(Robot, ForwardKinematicsMatchesTransformChain) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(-pi, pi);
  for (int k = 0; k < 1000; ++k) {
    const int n = 1 + k % 12;
    JointVector th(n);
    for (int i = 0; i < n; ++i) th[i] = U(rng);
    const auto a = forward_kinematics(0.05, th);
    const auto b = oracle::chain_fk(0.05, th);
    for (int i = 0; i < n; ++i) ASSERT_LE((a[i] - b[i + 1]).norm(), 1e-12);
  }
}

TEST(Robot, JacobianMatchesCentralDifferences) {
  std::mt19937 rng(2);
  std::uniform_real_distribution<double> U(-pi, pi);
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 9;
    JointVector th(n);
    for (int i = 0; i < n; ++i) th[i] = U(rng);
    const Eigen::MatrixXd J = jacobian(0.05, th);
    const Eigen::MatrixXd F = oracle::jacobian_fd(0.05, th);
    EXPECT_LE((J - F).norm() / F.norm(), 1e-5);
  }
}

TEST(Robot, JacobianStraightChain) {
  const Jacobian J = jacobian(1.0, JointVector::Zero(3));
  EXPECT_NEAR(J(0, 2), 0, 1e-15);
  EXPECT_NEAR(J(1, 2), 1, 1e-15);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(J(1, i), 3 - i, 1e-15);
  EXPECT_NEAR(manipulability(1.0, JointVector::Zero(3)), 0, 1e-12);
  EXPECT_GT(manipulability(1.0, vec({0.3, 0.8, 0.5})), 0);
}

TEST(Robot, SpecValidationAndJson) {
  RobotSpec spec;
  EXPECT_NO_THROW(spec.validate());
  const RobotSpec back = robot_spec_from_json(robot_spec_to_json(spec));
  EXPECT_EQ(back, spec);
  spec.link_length = -1;
  EXPECT_THROW(spec.validate(), ParameterError);
  spec = RobotSpec{};
  spec.actuator_count = 0;
  EXPECT_THROW(spec.validate(), ParameterError);
  EXPECT_THROW(robot_spec_from_json("{not json"), Error);
}

TEST(Robot, WithinLimits) {
  const RobotSpec spec;
  JointVector th = JointVector::Zero(10);
  th[3] = pi / 4;
  EXPECT_TRUE(spec.within_limits(th));
  th[3] = pi / 4 + 1e-6;
  EXPECT_FALSE(spec.within_limits(th));
}

TEST(Robot, ActuatorPlacementAndSets) {
  EXPECT_THROW(ActuatorPlacement({1, 1}), PlacementError);
  EXPECT_THROW(ActuatorPlacement({0}), PlacementError);
  const ActuatorPlacement p({3, 1});
  EXPECT_EQ(p.joints(), (std::vector<int>{1, 3}));
  const ActuatedSets s = actuated_sets(p, 4);
  EXPECT_EQ(s.actuated, (std::vector<int>{1, 3}));
  EXPECT_EQ(s.unactuated, (std::vector<int>{2, 4}));
  EXPECT_THROW(actuated_sets(ActuatorPlacement({5}), 4), PlacementError);
}

TEST(Robot, ManifoldMembership) {
  const ActuatorPlacement p({1, 3});
  const JointVector base = vec({0.2, -0.4, 0.1, 0.7});
  const ManifoldAnchor anchor = ManifoldAnchor::through(base, p);
  JointVector moved = base;
  moved[0] += 0.3;
  moved[2] -= 0.2;
  EXPECT_TRUE(manifold_contains(moved, anchor));
  moved[1] += 1e-6;
  EXPECT_FALSE(manifold_contains(moved, anchor));
}

TEST(Robot, DegreesToRadians) {
  EXPECT_TRUE(degrees_to_radians(vec({180, -90})).isApprox(vec({pi, -pi / 2})));
}

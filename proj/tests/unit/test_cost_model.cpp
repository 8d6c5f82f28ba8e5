#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "masr/cost_model.hpp"
#include "masr/scene.hpp"

using namespace masr;
using std::numbers::pi;

namespace {

const std::string kRoot = MASR_SOURCE_DIR;

Plan bundled() { return load_plan(kRoot + "/data/reach_and_return.plan"); }

JointVector vec(std::initializer_list<double> v) {
  JointVector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST(PlanText, ParsesClausesPhasesAndDeclarations) {
  const Plan p = parse_plan(
      "# comment\n"
      "declare turning_degrees 100\n"
      "phase out\n"
      "translate 1 3 rotate 3 45\n"
      "rotate 3 -10 translate 3 2\n"
      "phase back\n"
      "translate 2 1\n");
  ASSERT_EQ(p.step_count(), 3u);
  EXPECT_EQ(p.phases(), (std::vector<std::string>{"out", "back"}));
  EXPECT_EQ(*p.declared.turning_degrees, 100.0);
  EXPECT_FALSE(p.declared.translation_links);
  EXPECT_TRUE(std::holds_alternative<Rotate>(p.steps[1].actions[0]));
  EXPECT_EQ(p.steps[0].link_moves(), 2);
  EXPECT_DOUBLE_EQ(p.steps[1].rotation_degrees(), 10.0);
}

TEST(PlanText, RoundTrip) {
  const Plan p = bundled();
  const Plan q = parse_plan(format_plan(p));
  EXPECT_EQ(format_plan(q), format_plan(p));
  EXPECT_EQ(q.step_count(), p.step_count());
  EXPECT_EQ(q.phases(), p.phases());
}

TEST(PlanText, ErrorsNameTheLine) {
  try {
    parse_plan("translate 1 2\nrotate x 4\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  EXPECT_THROW(parse_plan("spin 1 2\n"), FormatError);
  EXPECT_THROW(parse_plan("translate 1\n"), FormatError);
}

TEST(PlanText, Validation) {
  EXPECT_NO_THROW(validate_plan(bundled(), 10));
  EXPECT_THROW(validate_plan(parse_plan("translate 1 12\n"), 10), PlanError);
  EXPECT_THROW(validate_plan(parse_plan("rotate 0 10\n"), 10), PlanError);
}

TEST(Summary, BundledPlanTotals) {
  const Plan p = bundled();
  const PlanSummary s = summarize(p);
  EXPECT_DOUBLE_EQ(s.turning_degrees, 810.0);
  EXPECT_EQ(s.translation_links, 48);
  EXPECT_EQ(s.steps, 17u);
  EXPECT_EQ(*p.declared.turning_degrees, 840.0);
  EXPECT_EQ(*p.declared.translation_links, 48);
}

TEST(Summary, ReachingPhase) {
  const Plan p = bundled();
  int links = 0;
  for (const auto& step : p.steps)
    if (step.phase == "reaching") links += step.link_moves();
  EXPECT_EQ(links, 23);
  const RobotSpec spec;
  ReplayOptions o;
  o.limits = LimitCheck::kOff;
  const ReplayResult r = replay(p, spec, straight_state(spec), o);
  const auto end = r.phase_end("reaching");
  ASSERT_TRUE(end);
  EXPECT_EQ(r.frames[*end].actuators, (std::vector<int>{10}));
}

TEST(Time, BundledPlanTime) {
  const CostParams params;
  EXPECT_NEAR(total_time(bundled(), params, 0.05), 142.0, 1e-9);
  PlanSummary declared = summarize(bundled());
  declared.turning_degrees = 840.0;
  EXPECT_NEAR(total_time(declared, params, 0.05), 80.0 + 840.0 / 18.0 + 17.0, 1e-9);
}

TEST(Time, MonotoneInParameters) {
  const Plan p = bundled();
  CostParams base;
  const double t0 = total_time(p, base, 0.05);
  CostParams faster = base;
  faster.translation_speed *= 2;
  EXPECT_LT(total_time(p, faster, 0.05), t0);
  faster = base;
  faster.rotation_speed *= 2;
  EXPECT_LT(total_time(p, faster, 0.05), t0);
  CostParams slower = base;
  slower.step_delay = 2;
  EXPECT_GT(total_time(p, slower, 0.05), t0);
  base.translation_speed = 0;
  EXPECT_THROW(base.validate(), ParameterError);
}

TEST(Energy, SingleStep) {
  const Plan p = parse_plan("translate 1 3 rotate 3 45\n");
  EXPECT_NEAR(total_energy(p, CostParams{}, 0.05), 0.1 + pi / 4, 1e-12);
  EXPECT_NEAR(total_energy(p, CostParams{}, 0.05), 0.885398, 1e-6);
}

TEST(Energy, AdditiveUnderConcatenation) {
  const Plan a = parse_plan("translate 1 3 rotate 3 45\n");
  const Plan b = parse_plan("translate 3 2 rotate 2 -30\ntranslate 2 5\n");
  const CostParams params;
  const Plan ab = a.concatenate(b);
  EXPECT_NEAR(total_energy(ab, params, 0.05), total_energy(a, params, 0.05) + total_energy(b, params, 0.05),
              1e-12);
  EXPECT_NEAR(total_time(ab, params, 0.05), total_time(a, params, 0.05) + total_time(b, params, 0.05), 1e-12);
}

TEST(PointToPoint, Modes) {
  CostParams p;
  p.rotation_speed = 1;
  p.translation_speed = 1;
  p.step_delay = 0;
  const JointVector d = vec({0.5, 0.2, 0.3});
  EXPECT_NEAR(point_to_point_time(d, ActuationMode::kFullyActuated, p, 1.0), 0.5, 1e-15);
  EXPECT_NEAR(point_to_point_time(d, ActuationMode::kTwoActuator, p, 1.0), 1.8, 1e-12);
}

TEST(PointToPoint, TwoActuatorsNoSlowerThanOne) {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> U(-1, 1);
  CostParams p;
  for (int k = 0; k < 200; ++k) {
    const JointVector d = vec({U(rng), U(rng), U(rng)});
    EXPECT_LE(point_to_point_time(d, ActuationMode::kTwoActuator, p, 0.05),
              point_to_point_time(d, ActuationMode::kOneActuator, p, 0.05) + 1e-12);
  }
}

TEST(Replay, StepSamplingAndFinalState) {
  const RobotSpec spec;
  const ReplayResult r = replay(parse_plan("translate 1 3 rotate 3 30\n"), spec, straight_state(spec));
  EXPECT_EQ(r.frames.front().step, 0u);
  EXPECT_EQ(r.frames.size(), 31u);
  EXPECT_DOUBLE_EQ(r.final_state.theta[2], 30.0 * pi / 180.0);
  EXPECT_EQ(r.final_state.actuators, (std::vector<int>{3}));
  for (std::size_t i = 1; i < r.frames.size(); ++i) EXPECT_EQ(r.frames[i].moving_joint, 3);
}

TEST(Replay, RequiresActuatorAtJoint) {
  const RobotSpec spec;
  EXPECT_THROW(replay(parse_plan("rotate 4 10\n"), spec, straight_state(spec)), InfeasiblePlanError);
  EXPECT_THROW(replay(parse_plan("translate 2 3\n"), spec, straight_state(spec)), InfeasiblePlanError);
}

TEST(Replay, LimitModes) {
  const RobotSpec spec;
  const Plan over = parse_plan("rotate 1 50\n");
  EXPECT_THROW(replay(over, spec, straight_state(spec)), JointLimitError);
  ReplayOptions off;
  off.limits = LimitCheck::kOff;
  const ReplayResult r = replay(over, spec, straight_state(spec), off);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].joint, 1);
  ReplayOptions strict;
  strict.limits = LimitCheck::kStrict;
  EXPECT_THROW(replay(parse_plan("rotate 1 50\nrotate 1 -50\n"), spec, straight_state(spec), strict),
               JointLimitError);
}

TEST(Replay, BundledReachingPhaseIsWithinLimits) {
  const RobotSpec spec;
  ReplayOptions o;
  o.limits = LimitCheck::kOff;
  const ReplayResult r = replay(bundled(), spec, straight_state(spec), o);
  for (const auto& v : r.violations) EXPECT_GT(v.step, 8u);
  const auto end = r.phase_end("reaching");
  for (std::size_t i = 0; i <= *end; ++i) EXPECT_TRUE(spec.within_limits(r.frames[i].theta, 1e-9));
}

TEST(Replay, ManifoldConstraintPerFrame) {
  const RobotSpec spec;
  ReplayOptions o;
  o.limits = LimitCheck::kOff;
  const ReplayResult r = replay(bundled(), spec, straight_state(spec), o);
  for (std::size_t i = 1; i < r.frames.size(); ++i)
    for (int j = 0; j < spec.link_count; ++j)
      if (j + 1 != r.frames[i].moving_joint) ASSERT_EQ(r.frames[i].theta[j], r.frames[i - 1].theta[j]);
  EXPECT_FALSE(replay_csv(r).empty());
}

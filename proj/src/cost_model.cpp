#include "masr/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace masr {

namespace {

constexpr double kRadPerDeg = std::numbers::pi / 180.0;

double rad(double degrees) { return degrees * kRadPerDeg; }

}  // namespace

double PlanStep::rotation_degrees() const {
  double total = 0.0;
  for (const auto& a : actions)
    if (const auto* r = std::get_if<Rotate>(&a)) total += std::abs(r->degrees);
  return total;
}

int PlanStep::link_moves() const {
  int total = 0;
  for (const auto& a : actions)
    if (const auto* t = std::get_if<Translate>(&a)) total += std::abs(t->to - t->from);
  return total;
}

std::vector<std::string> Plan::phases() const {
  std::vector<std::string> out;
  for (const auto& s : steps)
    if (std::find(out.begin(), out.end(), s.phase) == out.end()) out.push_back(s.phase);
  return out;
}

Plan Plan::concatenate(const Plan& other) const {
  Plan out = *this;
  out.steps.insert(out.steps.end(), other.steps.begin(), other.steps.end());
  out.declared = {};
  return out;
}

void validate_plan(const Plan& plan, int link_count) {
  auto check = [&](int joint, std::size_t step) {
    if (joint < 1 || joint > link_count)
      throw PlanError("step " + std::to_string(step) + ": joint " + std::to_string(joint) +
                      " outside 1.." + std::to_string(link_count));
  };
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    for (const auto& a : plan.steps[s].actions) {
      if (const auto* r = std::get_if<Rotate>(&a)) {
        check(r->joint, s + 1);
        if (!std::isfinite(r->degrees)) throw PlanError("non-finite rotation");
      } else {
        const auto& t = std::get<Translate>(a);
        check(t.from, s + 1);
        check(t.to, s + 1);
      }
    }
  }
}

void CostParams::validate() const {
  if (!(translation_speed > 0.0)) throw ParameterError("translation speed must be positive");
  if (!(rotation_speed > 0.0)) throw ParameterError("rotation speed must be positive");
  if (!(step_delay >= 0.0)) throw ParameterError("step delay must be non-negative");
  if (!(translation_energy >= 0.0) || !(rotation_energy >= 0.0))
    throw ParameterError("energy coefficients must be non-negative");
}

PlanSummary summarize(const Plan& plan) {
  PlanSummary summary;
  for (const auto& s : plan.steps) {
    summary.turning_degrees += s.rotation_degrees();
    summary.translation_links += s.link_moves();
  }
  summary.steps = plan.steps.size();
  return summary;
}

double total_time(const PlanSummary& summary, const CostParams& params, double link_length) {
  params.validate();
  return link_length * summary.translation_links / params.translation_speed +
         rad(summary.turning_degrees) / params.rotation_speed +
         static_cast<double>(summary.steps) * params.step_delay;
}

double total_time(const Plan& plan, const CostParams& params, double link_length) {
  return total_time(summarize(plan), params, link_length);
}

double total_energy(const Plan& plan, const CostParams& params, double link_length) {
  params.validate();
  const PlanSummary s = summarize(plan);
  return params.translation_energy * link_length * s.translation_links +
         params.rotation_energy * rad(s.turning_degrees);
}

double point_to_point_time(const JointVector& delta_theta, ActuationMode mode,
                           const CostParams& params, double link_length) {
  params.validate();
  const JointVector mag = delta_theta.cwiseAbs();
  switch (mode) {
    case ActuationMode::kFullyActuated:
      return mag.size() == 0 ? 0.0 : mag.maxCoeff() / params.rotation_speed;
    case ActuationMode::kTwoActuator: {
      if (mag.size() != 3) throw DimensionError("two-actuator closed form needs N = 3");
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        best = std::min(best, std::max(mag[k], mag[i]) + std::max(mag[k], mag[j]));
      }
      return best / params.rotation_speed + link_length / params.translation_speed +
             2.0 * params.step_delay;
    }
    case ActuationMode::kOneActuator: {
      int first = -1;
      int last = -1;
      int steps = 0;
      for (Eigen::Index i = 0; i < mag.size(); ++i) {
        if (mag[i] == 0.0) continue;
        if (first < 0) first = static_cast<int>(i);
        last = static_cast<int>(i);
        ++steps;
      }
      if (steps == 0) return 0.0;
      return link_length * (last - first) / params.translation_speed +
             mag.sum() / params.rotation_speed + steps * params.step_delay;
    }
  }
  return 0.0;
}

std::optional<std::size_t> ReplayResult::phase_end(const std::string& phase) const {
  std::optional<std::size_t> last;
  for (std::size_t k = 0; k < frames.size(); ++k)
    if (frames[k].step > 0 && frames[k].phase == phase) last = k;
  return last;
}

RobotState straight_state(const RobotSpec& spec, std::vector<int> actuators) {
  return {JointVector::Zero(spec.link_count), std::move(actuators)};
}

void apply_plan_step(const PlanStep& step, std::size_t step_number, const RobotSpec& spec,
                     const ReplayOptions& options, RobotState& state,
                     std::vector<ReplayFrame>* frames, std::vector<LimitViolation>* violations) {
  const double limit_deg = spec.joint_limit / kRadPerDeg;
  const double tol = 1e-9;
  auto emit = [&](int joint) {
    if (frames)
      frames->push_back({step_number, step.phase, state.theta, state.actuators, joint});
  };

  for (const auto& action : step.actions) {
    if (const auto* t = std::get_if<Translate>(&action)) {
      auto it = std::find(state.actuators.begin(), state.actuators.end(), t->from);
      if (it == state.actuators.end())
        throw InfeasiblePlanError(step_number, "step " + std::to_string(step_number) +
                                                   ": no actuator at joint " +
                                                   std::to_string(t->from) + " to translate");
      if (t->to < 1 || t->to > spec.link_count)
        throw InfeasiblePlanError(step_number, "step " + std::to_string(step_number) +
                                                   ": translation target outside the chain");
      *it = t->to;
      continue;
    }
    const auto& r = std::get<Rotate>(action);
    if (std::find(state.actuators.begin(), state.actuators.end(), r.joint) ==
        state.actuators.end())
      throw InfeasiblePlanError(step_number, "step " + std::to_string(step_number) +
                                                 ": no actuator at joint " +
                                                 std::to_string(r.joint) + " to rotate");
    if (r.joint < 1 || r.joint > spec.link_count)
      throw InfeasiblePlanError(step_number, "step " + std::to_string(step_number) +
                                                 ": joint outside the chain");
    const Eigen::Index idx = r.joint - 1;
    const double start = state.theta[idx];
    const double total = rad(r.degrees);
    const auto pieces = static_cast<int>(
        std::max(1.0, std::ceil(std::abs(r.degrees) / options.resolution_degrees - 1e-9)));
    for (int k = 1; k <= pieces; ++k) {
      // The final sample is formed exactly as start + total.
      state.theta[idx] = k == pieces ? start + total : start + total * k / pieces;
      const double deg = state.theta[idx] / kRadPerDeg;
      if (options.limits == LimitCheck::kStrict && std::abs(deg) > limit_deg + tol)
        throw JointLimitError(step_number, r.joint,
                              "step " + std::to_string(step_number) + ": joint " +
                                  std::to_string(r.joint) + " passes " + std::to_string(deg) +
                                  " deg");
      emit(r.joint);
    }
    const double end_deg = state.theta[idx] / kRadPerDeg;
    if (std::abs(end_deg) > limit_deg + tol) {
      if (violations) violations->push_back({step_number, r.joint, end_deg});
      if (options.limits != LimitCheck::kOff)
        throw JointLimitError(step_number, r.joint,
                              "step " + std::to_string(step_number) + ": joint " +
                                  std::to_string(r.joint) + " ends at " + std::to_string(end_deg) +
                                  " deg");
    }
  }
  // Steps without rotation still produce a frame so actuator moves are visible.
  bool rotated = false;
  for (const auto& a : step.actions) rotated = rotated || std::holds_alternative<Rotate>(a);
  if (!rotated) emit(0);
}

ReplayResult replay(const Plan& plan, const RobotSpec& spec, const RobotState& initial,
                    const ReplayOptions& options) {
  if (initial.theta.size() != spec.link_count)
    throw DimensionError("initial state does not match the robot");
  if (!(options.resolution_degrees > 0.0)) throw ParameterError("resolution must be positive");
  validate_plan(plan, spec.link_count);
  ReplayResult result;
  RobotState state = initial;
  result.frames.push_back({0, "", state.theta, state.actuators, 0});
  for (std::size_t s = 0; s < plan.steps.size(); ++s)
    apply_plan_step(plan.steps[s], s + 1, spec, options, state, &result.frames,
                    &result.violations);
  result.final_state = state;
  return result;
}

std::string replay_csv(const ReplayResult& result) {
  std::ostringstream out;
  const Eigen::Index n = result.frames.empty() ? 0 : result.frames.front().theta.size();
  out << "frame,step,phase";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",theta" << i << "_deg";
  out << ",actuator\n";
  char buf[64];
  for (std::size_t k = 0; k < result.frames.size(); ++k) {
    const auto& f = result.frames[k];
    out << k << ',' << f.step << ',' << f.phase;
    for (Eigen::Index i = 0; i < f.theta.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.10g", f.theta[i] / kRadPerDeg);
      out << ',' << buf;
    }
    out << ',';
    for (std::size_t a = 0; a < f.actuators.size(); ++a) out << (a ? ";" : "") << f.actuators[a];
    out << '\n';
  }
  return out.str();
}

}  // namespace masr

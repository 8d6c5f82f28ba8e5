#pragma once

#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "masr/path.hpp"
#include "masr/robot.hpp"

namespace masr {

struct Rotate {
  int joint = 1;           // 1-based
  double degrees = 0.0;    // signed relative rotation

  friend bool operator==(const Rotate&, const Rotate&) = default;
};

struct Translate {
  int from = 1;  // 1-based joints
  int to = 1;

  friend bool operator==(const Translate&, const Translate&) = default;
};

using PlanAction = std::variant<Rotate, Translate>;

// One row of a motion table: actions executed left to right. A table row
// normally holds one translation and one rotation.
struct PlanStep {
  std::vector<PlanAction> actions;
  std::string phase;

  double rotation_degrees() const;  // sum of |rotation|
  int link_moves() const;           // sum of |to - from|
};

// Totals printed next to a motion table, kept so they can be compared with
// the recomputed ones.
struct DeclaredTotals {
  std::optional<double> turning_degrees;
  std::optional<int> translation_links;
};

struct Plan {
  std::vector<PlanStep> steps;
  DeclaredTotals declared;

  std::size_t step_count() const { return steps.size(); }
  // Names of phases in order of first appearance.
  std::vector<std::string> phases() const;
  Plan concatenate(const Plan& other) const;
};

// Text format, one step per line:
//   translate <from> <to> rotate <joint> <degrees>
// Clauses run in the order written. Also accepted:
//   phase <name>                      subsequent steps belong to <name>
//   declare turning_degrees <value>   printed totals for comparison
//   declare translation_links <value>
// '#' starts a comment.
Plan parse_plan(const std::string& text);
Plan load_plan(const std::string& path);
std::string format_plan(const Plan& plan);

// One step per path segment: actuators first travel to the joints the segment
// moves (nearest-first, as in count_traversals), then those joints rotate.
Plan plan_from_path(const PiecewiseLinearPath& path, const ActuatorPlacement& initial);

// Index checks against the chain length. Throws PlanError.
void validate_plan(const Plan& plan, int link_count);

struct CostParams {
  double translation_speed = 0.03;                           // V, m/s
  double rotation_speed = 18.0 * std::numbers::pi / 180.0;   // omega, rad/s
  double step_delay = 1.0;                                   // T_delay, s
  double translation_energy = 1.0;                           // k_n
  double rotation_energy = 1.0;                              // k_theta

  void validate() const;
};

struct PlanSummary {
  double turning_degrees = 0.0;
  int translation_links = 0;
  std::size_t steps = 0;
};

PlanSummary summarize(const Plan& plan);

// L sum|dn| / V + sum|dtheta| / omega + N_STEP T_delay
double total_time(const Plan& plan, const CostParams& params, double link_length);
double total_time(const PlanSummary& summary, const CostParams& params, double link_length);
// k_n L sum|dn| + k_theta sum|dtheta|
double total_energy(const Plan& plan, const CostParams& params, double link_length);

enum class ActuationMode { kFullyActuated, kTwoActuator, kOneActuator };

// Time to move between two configurations differing by `delta_theta`.
//  * fully actuated: all joints turn at once.
//  * two actuators (N = 3 only): two planar phases sharing a retained joint,
//    one actuator translation between them; the best retained joint is used.
//  * one actuator: one step per moving joint visited in index order.
double point_to_point_time(const JointVector& delta_theta, ActuationMode mode,
                           const CostParams& params, double link_length);

enum class LimitCheck {
  kOff,      // record violations only
  kStepEnd,  // the angle after each rotation must be within limits
  kStrict,   // every intermediate sample must be within limits
};

struct ReplayOptions {
  double resolution_degrees = 1.0;  // sampling of each rotation
  LimitCheck limits = LimitCheck::kStepEnd;
};

struct RobotState {
  JointVector theta;
  std::vector<int> actuators;  // 1-based joints, one per actuator
};

struct ReplayFrame {
  std::size_t step = 0;  // 1-based plan step; 0 for the initial state
  std::string phase;
  JointVector theta;
  std::vector<int> actuators;
  int moving_joint = 0;  // joint changed to reach this frame, 0 if none
};

struct LimitViolation {
  std::size_t step = 0;
  int joint = 0;
  double degrees = 0.0;
};

struct ReplayResult {
  std::vector<ReplayFrame> frames;
  std::vector<LimitViolation> violations;  // at step ends
  RobotState final_state;

  // Index of the last frame belonging to `phase`, if any.
  std::optional<std::size_t> phase_end(const std::string& phase) const;
};

RobotState straight_state(const RobotSpec& spec, std::vector<int> actuators = {1});

// Applies one step to `state` in place, appending frames. Exposed so that
// interactive sessions step through a plan with identical arithmetic.
void apply_plan_step(const PlanStep& step, std::size_t step_number, const RobotSpec& spec,
                     const ReplayOptions& options, RobotState& state,
                     std::vector<ReplayFrame>* frames, std::vector<LimitViolation>* violations);

// Kinematic replay. Rotations require an actuator at the joint; translations
// require an actuator at the start joint. Throws InfeasiblePlanError or
// JointLimitError (per options.limits).
ReplayResult replay(const Plan& plan, const RobotSpec& spec, const RobotState& initial,
                    const ReplayOptions& options = {});

std::string replay_csv(const ReplayResult& result);

}  // namespace masr

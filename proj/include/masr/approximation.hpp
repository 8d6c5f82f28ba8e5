#pragma once

#include <vector>

#include "masr/curve.hpp"
#include "masr/path.hpp"
#include "masr/surface_path.hpp"

namespace masr {

struct BreakpointOptions {
  std::size_t grid_points = 2048;  // scan resolution on (u0, 1]
  double tolerance = 1e-10;        // bisection width in u
};

// Smallest u in (u0, 1] where ||g(u) - g(u0)||_inf reaches delta / 2,
// located by a grid scan for the first sign change followed by bisection.
// The returned parameter sits on the inner side of the crossing. Returns 1
// when the curve never leaves the ball. Throws ParameterError on delta <= 0.
double find_next_breakpoint(const CSpaceCurve& curve, double u0, double delta,
                            const BreakpointOptions& options = {});

struct ApproximationOptions {
  BreakpointOptions breakpoint;
  // Initial actuator joint (1-based) used to order edge moves when M = 1.
  int initial_actuator_joint = 1;
};

// Builds a delta-approximation of `curve` whose segments each move at most
// `actuator_count` joints. Breakpoints that lie on the curve are recorded
// as anchors together with their curve parameter.
PiecewiseLinearPath approximation_curve(const CSpaceCurve& curve, int actuator_count,
                                        double delta, const ApproximationOptions& options = {});

struct VerificationResult {
  bool ok = false;
  double worst = 0.0;          // max of the two directed distances
  double path_to_curve = 0.0;  // max_t min_u ||f(t) - g(u)||_inf
  double curve_to_path = 0.0;  // max_u min_t ||f(t) - g(u)||_inf
};

// Two-sided infinity-norm check on dense samples. The curve side is sampled
// `sample_density` times; the path side gets as many arc-length samples plus
// every breakpoint. Distances to the path are exact point-to-segment values.
VerificationResult verify_delta_approx(const PiecewiseLinearPath& path, const CSpaceCurve& curve,
                                       double delta, std::size_t sample_density = 2000);

// Exact min over s in [0,1] of ||a + s (b - a) - p||_inf.
double segment_distance_inf(const JointVector& a, const JointVector& b, const JointVector& p);

struct TraversalCount {
  std::size_t steps = 0;                  // N_STEP, one per segment
  std::vector<int> link_moves;            // |delta n_i|: links travelled before step i
  std::vector<JointVector> rotations;     // delta theta of step i (zero off the active set)
  std::size_t relocations = 0;            // actuator moves between distinct joints
  std::vector<std::vector<int>> actuator_joints;  // placement during each step

  int total_link_moves() const;
  // Sum over steps of sum |delta theta| (energy style).
  double total_rotation() const;
  // Sum over steps of max |delta theta| (actuators turn simultaneously).
  double total_rotation_time_basis() const;
};

// Relates path segments to actuator motion. For each segment an actuator
// keeps its joint if that joint is still active, otherwise it moves to the
// nearest newly active joint. Throws InfeasiblePathError when a segment
// moves more joints than there are actuators.
TraversalCount count_traversals(const PiecewiseLinearPath& path,
                                const ActuatorPlacement& initial);

}  // namespace masr

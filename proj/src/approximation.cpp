#include "masr/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace masr {

namespace {

double inf_distance(const JointVector& a, const JointVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Infinity-norm distance from p to the bounding box of segment a-b; a lower
// bound on the distance to the segment itself.
double box_distance_inf(const JointVector& a, const JointVector& b, const JointVector& p) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double lo = std::min(a[i], b[i]);
    const double hi = std::max(a[i], b[i]);
    const double d = p[i] < lo ? lo - p[i] : (p[i] > hi ? p[i] - hi : 0.0);
    worst = std::max(worst, d);
  }
  return worst;
}

// Polyline made of consecutive points; answers nearest-distance queries.
class Polyline {
 public:
  explicit Polyline(std::vector<JointVector> points) : points_(std::move(points)) {}

  double distance(const JointVector& p) const {
    double best = std::numeric_limits<double>::infinity();
    if (points_.size() == 1) return inf_distance(points_.front(), p);
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
      if (box_distance_inf(points_[k], points_[k + 1], p) >= best) continue;
      best = std::min(best, segment_distance_inf(points_[k], points_[k + 1], p));
    }
    return best;
  }

 private:
  std::vector<JointVector> points_;
};

double nearest_point_distance(const std::vector<JointVector>& points, const JointVector& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& q : points) {
    double d = 0.0;
    for (Eigen::Index i = 0; i < p.size() && d < best; ++i) d = std::max(d, std::abs(q[i] - p[i]));
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

double find_next_breakpoint(const CSpaceCurve& curve, double u0, double delta,
                            const BreakpointOptions& options) {
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  if (!(u0 >= 0.0 && u0 < 1.0)) throw ParameterError("u0 must lie in [0, 1)");
  if (options.grid_points < 1) throw ParameterError("grid needs at least one point");
  const JointVector start = curve(u0);
  const double radius = 0.5 * delta;
  auto excess = [&](double u) { return inf_distance(curve(u), start) - radius; };

  const double span = 1.0 - u0;
  double lo = u0;
  double hi = -1.0;
  for (std::size_t k = 1; k <= options.grid_points; ++k) {
    const double u = k == options.grid_points
                         ? 1.0
                         : u0 + span * static_cast<double>(k) / static_cast<double>(options.grid_points);
    if (excess(u) >= 0.0) {
      hi = u;
      break;
    }
    lo = u;
  }
  if (hi < 0.0) return 1.0;
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return lo > u0 ? lo : hi;
}

PiecewiseLinearPath approximation_curve(const CSpaceCurve& curve, int actuator_count, double delta,
                                        const ApproximationOptions& options) {
  if (!(delta > 0.0)) throw ParameterError("delta must be positive");
  const auto n = static_cast<int>(curve.dimension());
  if (actuator_count < 1 || actuator_count > n)
    throw ParameterError("actuator count must lie in 1..N");

  PiecewiseLinearPath path(curve(0.0));
  path.mark_anchor(0.0);
  int actuator = options.initial_actuator_joint;
  double u0 = 0.0;
  while (u0 < 1.0) {
    const double ue = find_next_breakpoint(curve, u0, delta, options.breakpoint);
    const JointVector from = path.breakpoints().back();
    const JointVector to = curve(ue);
    SurfacePathOptions surface;
    surface.actuator_joint = actuator;
    for (const auto& v : surface_shortest_path(from, to, actuator_count, surface)) {
      if (v == path.breakpoints().back()) continue;
      path.append(v);
      const auto& active = path.active_sets().back();
      if (active.size() == 1) actuator = active.front();
    }
    path.mark_anchor(ue);
    u0 = ue;
  }
  return path;
}

double segment_distance_inf(const JointVector& a, const JointVector& b, const JointVector& p) {
  const JointVector offset = a - p;
  const JointVector dir = b - a;
  auto value = [&](double s) { return (offset + s * dir).cwiseAbs().maxCoeff(); };
  // The objective is a convex max of |linear| terms, so its minimum sits at
  // an end or where two terms cross (or one term vanishes).
  double best = std::min(value(0.0), value(1.0));
  const Eigen::Index n = p.size();
  auto consider = [&](double s) {
    if (s > 0.0 && s < 1.0) best = std::min(best, value(s));
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dir[i] != 0.0) consider(-offset[i] / dir[i]);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double diff = dir[i] - dir[j];
      if (diff != 0.0) consider((offset[j] - offset[i]) / diff);
      const double sum = dir[i] + dir[j];
      if (sum != 0.0) consider(-(offset[i] + offset[j]) / sum);
    }
  }
  return best;
}

VerificationResult verify_delta_approx(const PiecewiseLinearPath& path, const CSpaceCurve& curve,
                                       double delta, std::size_t sample_density) {
  if (path.dimension() != curve.dimension())
    throw DimensionError("path and curve differ in dimension");
  if (sample_density < 2) throw ParameterError("sample density must be at least 2");

  const std::vector<JointVector> curve_samples = curve.sample(sample_density);
  const std::vector<JointVector> path_samples = path.dense_samples(sample_density);

  VerificationResult result;
  // Curve side: the sampled curve's own nodes, when it has them, describe it
  // exactly, so the path is compared with that polyline.
  const auto& nodes = curve.nodes();
  if (!nodes.empty()) {
    const Polyline reference(nodes);
    for (const auto& p : path_samples)
      result.path_to_curve = std::max(result.path_to_curve, reference.distance(p));
  } else {
    for (const auto& p : path_samples)
      result.path_to_curve = std::max(result.path_to_curve, nearest_point_distance(curve_samples, p));
  }

  const Polyline approx(path.breakpoints());
  std::vector<JointVector> probes = curve_samples;
  probes.insert(probes.end(), nodes.begin(), nodes.end());
  for (const auto& q : probes)
    result.curve_to_path = std::max(result.curve_to_path, approx.distance(q));

  result.worst = std::max(result.path_to_curve, result.curve_to_path);
  result.ok = result.worst <= delta;
  return result;
}

int TraversalCount::total_link_moves() const {
  int total = 0;
  for (int m : link_moves) total += m;
  return total;
}

double TraversalCount::total_rotation() const {
  double total = 0.0;
  for (const auto& r : rotations) total += r.cwiseAbs().sum();
  return total;
}

double TraversalCount::total_rotation_time_basis() const {
  double total = 0.0;
  for (const auto& r : rotations)
    if (r.size() > 0) total += r.cwiseAbs().maxCoeff();
  return total;
}

TraversalCount count_traversals(const PiecewiseLinearPath& path,
                                const ActuatorPlacement& initial) {
  if (initial.size() == 0) throw PlacementError("at least one actuator is required");
  const auto n = static_cast<int>(path.dimension());
  for (int j : initial.joints())
    if (j < 1 || j > n) throw PlacementError("actuator index outside the chain");

  TraversalCount count;
  std::vector<int> at = initial.joints();
  const auto& points = path.breakpoints();
  for (std::size_t s = 0; s < path.segment_count(); ++s) {
    const auto& active = path.active_sets()[s];
    if (active.size() > at.size())
      throw InfeasiblePathError("segment " + std::to_string(s + 1) + " moves " +
                                std::to_string(active.size()) + " joints with " +
                                std::to_string(at.size()) + " actuators");
    std::vector<bool> covered(active.size(), false);
    std::vector<bool> keeps(at.size(), false);
    for (std::size_t a = 0; a < at.size(); ++a) {
      const auto it = std::find(active.begin(), active.end(), at[a]);
      if (it != active.end() && !covered[static_cast<std::size_t>(it - active.begin())]) {
        covered[static_cast<std::size_t>(it - active.begin())] = true;
        keeps[a] = true;
      }
    }
    int moved = 0;
    for (std::size_t a = 0; a < at.size(); ++a) {
      if (keeps[a]) continue;
      int best = -1;
      for (std::size_t k = 0; k < active.size(); ++k) {
        if (covered[k]) continue;
        if (best < 0 || std::abs(active[k] - at[a]) <
                            std::abs(active[static_cast<std::size_t>(best)] - at[a]))
          best = static_cast<int>(k);
      }
      if (best < 0) continue;
      covered[static_cast<std::size_t>(best)] = true;
      const int target = active[static_cast<std::size_t>(best)];
      moved += std::abs(target - at[a]);
      if (target != at[a]) ++count.relocations;
      at[a] = target;
    }
    count.link_moves.push_back(moved);
    count.rotations.push_back(points[s + 1] - points[s]);
    count.actuator_joints.push_back(at);
    ++count.steps;
  }
  return count;
}

}  // namespace masr

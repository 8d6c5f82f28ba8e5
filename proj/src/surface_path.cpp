#include "masr/surface_path.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace masr {

namespace {

constexpr std::size_t kMaxUnfoldingAxes = 6;

// Where an axis sits in a development: which unfolded direction carries it
// and at which coordinate its motion starts.
struct AxisPlacement {
  int direction = 0;  // 0 = X, 1 = Y
  double offset = 0.0;
};

struct Development {
  double length = 0.0;
  double extent[2] = {0.0, 0.0};
  std::vector<AxisPlacement> placement;  // indexed like the moving-axis list
  std::vector<int> completes;            // direction completing at each fold
};

JointVector point_from_progress(const JointVector& from, const JointVector& to,
                                const std::vector<std::size_t>& axes,
                                const std::vector<double>& sides,
                                const std::vector<double>& progress) {
  JointVector p = from;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const std::size_t a = axes[k];
    // Snap within rounding of either end so untouched axes stay bit-identical.
    const double snap = 1e-12 * sides[k];
    if (progress[k] >= sides[k] - snap) {
      p[static_cast<Eigen::Index>(a)] = to[static_cast<Eigen::Index>(a)];
    } else if (progress[k] > snap) {
      const double sign = to[static_cast<Eigen::Index>(a)] >= from[static_cast<Eigen::Index>(a)]
                              ? 1.0
                              : -1.0;
      p[static_cast<Eigen::Index>(a)] = from[static_cast<Eigen::Index>(a)] + sign * progress[k];
    }
  }
  return p;
}

std::vector<JointVector> edge_path(const JointVector& from, const JointVector& to,
                                   std::vector<std::size_t> axes,
                                   const SurfacePathOptions& options) {
  std::sort(axes.begin(), axes.end());
  if (options.actuator_joint && axes.size() > 1) {
    const int hint = *options.actuator_joint;
    const int lo = static_cast<int>(axes.front()) + 1;
    const int hi = static_cast<int>(axes.back()) + 1;
    if (std::abs(hint - hi) < std::abs(hint - lo)) std::reverse(axes.begin(), axes.end());
  }
  std::vector<JointVector> out;
  JointVector p = from;
  for (std::size_t a : axes) {
    p[static_cast<Eigen::Index>(a)] = to[static_cast<Eigen::Index>(a)];
    out.push_back(p);
  }
  out.back() = to;
  return out;
}

std::vector<JointVector> staircase_path(const JointVector& from, const JointVector& to,
                                        const std::vector<std::size_t>& axes,
                                        const std::vector<double>& sides, std::size_t carried) {
  // Widest axes are carried; ties keep the lower index.
  std::vector<std::size_t> order(axes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sides[a] > sides[b]; });
  std::vector<bool> is_carried(axes.size(), false);
  for (std::size_t k = 0; k < carried; ++k) is_carried[order[k]] = true;

  double rest_total = 0.0;
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (!is_carried[k]) rest_total += sides[k];

  std::vector<JointVector> out;
  std::vector<double> progress(axes.size(), 0.0);
  double done = 0.0;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (is_carried[k]) continue;
    done += sides[k];
    progress[k] = sides[k];
    for (std::size_t c = 0; c < axes.size(); ++c)
      if (is_carried[c]) progress[c] = sides[c] * (done / rest_total);
    out.push_back(point_from_progress(from, to, axes, sides, progress));
  }
  out.back() = to;
  return out;
}

// Lays out one face sequence. `order` lists moving-axis slots by start
// time; bit s of `fold_mask` says which direction completes at fold s.
// Returns false when the straight development leaves the unfolded faces.
bool develop(const std::vector<double>& sides, const std::vector<std::size_t>& order,
             unsigned fold_mask, Development& dev) {
  const std::size_t n = order.size();
  dev.placement.assign(n, {});
  dev.completes.clear();
  std::size_t holder[2] = {order[0], order[1]};
  dev.placement[order[0]] = {0, 0.0};
  dev.placement[order[1]] = {1, 0.0};
  for (std::size_t s = 0; s + 2 < n; ++s) {
    const int dir = static_cast<int>((fold_mask >> s) & 1U);
    const auto& done = dev.placement[holder[dir]];
    const double end = done.offset + sides[holder[dir]];
    holder[dir] = order[s + 2];
    dev.placement[order[s + 2]] = {dir, end};
    dev.completes.push_back(dir);
  }
  for (int dir = 0; dir < 2; ++dir)
    dev.extent[dir] = dev.placement[holder[dir]].offset + sides[holder[dir]];
  dev.length = std::hypot(dev.extent[0], dev.extent[1]);

  // Replay the folds: at each one the carried axis must still be in motion.
  std::size_t cur[2] = {order[0], order[1]};
  for (std::size_t s = 0; s + 2 < n; ++s) {
    const int dir = dev.completes[s];
    const int other = 1 - dir;
    const double at = dev.placement[cur[dir]].offset + sides[cur[dir]];
    const double cross = at * dev.extent[other] / dev.extent[dir];
    const auto& carried = dev.placement[cur[other]];
    const double slack = 1e-12 * (1.0 + dev.length);
    if (cross < carried.offset - slack || cross > carried.offset + sides[cur[other]] + slack)
      return false;
    cur[dir] = order[s + 2];
  }
  return true;
}

std::vector<JointVector> unfolded_geodesic(const JointVector& from, const JointVector& to,
                                           const std::vector<std::size_t>& axes,
                                           const std::vector<double>& sides) {
  const std::size_t n = axes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const unsigned masks = 1U << (n - 2);

  Development best;
  bool found = false;
  Development dev;
  do {
    for (unsigned mask = 0; mask < masks; ++mask) {
      if (!develop(sides, order, mask, dev)) continue;
      if (!found || dev.length < best.length * (1.0 - 1e-14)) {
        best = dev;
        found = true;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));

  // A sequence carrying one axis throughout is always feasible.
  if (!found) return staircase_path(from, to, axes, sides, 1);
  std::vector<JointVector> out;
  std::vector<double> fold_points;  // position along the line, as a fraction
  // Each fold happens where a completing axis reaches its end coordinate.
  std::vector<double> ends[2];
  for (std::size_t k = 0; k < n; ++k)
    ends[best.placement[k].direction].push_back(best.placement[k].offset + sides[k]);
  for (int dir = 0; dir < 2; ++dir) {
    std::sort(ends[dir].begin(), ends[dir].end());
    ends[dir].pop_back();  // the last axis in each direction ends at the corner
    for (double e : ends[dir]) fold_points.push_back(e / best.extent[dir]);
  }
  std::sort(fold_points.begin(), fold_points.end());
  for (double f : fold_points) {
    std::vector<double> progress(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& pl = best.placement[k];
      const double coord = f * best.extent[pl.direction];
      progress[k] = std::clamp(coord - pl.offset, 0.0, sides[k]);
    }
    out.push_back(point_from_progress(from, to, axes, sides, progress));
  }
  out.push_back(to);
  return out;
}

}  // namespace

bool Hypercuboid::contains(const JointVector& x, double tolerance) const {
  if (x.size() != lower.size()) return false;
  return ((x.array() >= lower.array() - tolerance) && (x.array() <= upper.array() + tolerance))
      .all();
}

Hypercuboid spanning_hypercuboid(const JointVector& a, const JointVector& b) {
  if (a.size() != b.size()) throw DimensionError("hypercuboid corners differ in dimension");
  return {a.cwiseMin(b), a.cwiseMax(b)};
}

std::vector<JointVector> surface_shortest_path(const JointVector& from, const JointVector& to,
                                               int actuator_count,
                                               const SurfacePathOptions& options) {
  if (from.size() != to.size()) throw DimensionError("path corners differ in dimension");
  const auto n_dim = static_cast<int>(from.size());
  if (actuator_count < 1 || actuator_count > n_dim)
    throw ParameterError("actuator count must lie in 1..N");

  std::vector<std::size_t> axes;
  std::vector<double> sides;
  for (Eigen::Index i = 0; i < from.size(); ++i) {
    const double d = std::abs(to[i] - from[i]);
    if (d > 0.0) {
      axes.push_back(static_cast<std::size_t>(i));
      sides.push_back(d);
    }
  }
  if (axes.empty()) return {};
  const auto m = static_cast<std::size_t>(actuator_count);
  if (axes.size() <= m) return {to};
  if (m == 1) return edge_path(from, to, axes, options);
  if (m == 2 && axes.size() <= kMaxUnfoldingAxes) return unfolded_geodesic(from, to, axes, sides);
  return staircase_path(from, to, axes, sides, m - 1);
}

double polyline_length(const JointVector& from, const std::vector<JointVector>& vertices) {
  double total = 0.0;
  JointVector prev = from;
  for (const auto& v : vertices) {
    total += (v - prev).norm();
    prev = v;
  }
  return total;
}

}  // namespace masr

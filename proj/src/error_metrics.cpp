#include "masr/error_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace masr {

namespace {

void check_bound_domain(int link_count, double link_length, double delta) {
  if (link_count < 1) throw ParameterError("link count must be positive");
  if (!(link_length > 0.0)) throw ParameterError("link length must be positive");
  if (!(delta >= 0.0)) throw ParameterError("delta must be non-negative");
  if (link_count * delta > std::numbers::pi / 2.0)
    throw DomainError("bound requires N * delta <= pi/2");
}

double sine_sum(int terms, double delta) {
  double s = 0.0;
  for (int i = 1; i <= terms; ++i) s += std::sin(i * delta / 2.0);
  return s;
}

void require_same_length(const JointVector& a, const JointVector& b) {
  if (a.size() != b.size()) throw DimensionError("joint vectors differ in length");
}

struct Endpoint {
  double x;
  double y;
  double heading;
};

// Endpoints sorted by x for a sweep-line nearest-neighbour search.
class EndpointSet {
 public:
  explicit EndpointSet(std::vector<Endpoint> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end(), [](const Endpoint& a, const Endpoint& b) { return a.x < b.x; });
  }

  double nearest(const Endpoint& q) const {
    double best = std::numeric_limits<double>::infinity();
    auto it = std::lower_bound(pts_.begin(), pts_.end(), q.x,
                               [](const Endpoint& e, double x) { return e.x < x; });
    for (auto r = it; r != pts_.end() && r->x - q.x < best; ++r)
      best = std::min(best, std::hypot(r->x - q.x, r->y - q.y));
    for (auto l = it; l != pts_.begin();) {
      --l;
      if (q.x - l->x >= best) break;
      best = std::min(best, std::hypot(l->x - q.x, l->y - q.y));
    }
    return best;
  }

 private:
  std::vector<Endpoint> pts_;
};

Endpoint endpoint_of(double link_length, const JointVector& theta) {
  const Pose2 pose = endpoint_pose(link_length, theta);
  return {pose.x, pose.y, pose.heading};
}

}  // namespace

double endpoint_error_bound(int link_count, double link_length, double delta) {
  check_bound_domain(link_count, link_length, delta);
  return 2.0 * link_length * sine_sum(link_count, delta);
}

PoseBounds planar_pose_bounds(int link_count, double link_length, double delta) {
  check_bound_domain(link_count, link_length, delta);
  return {2.0 * link_length * sine_sum(link_count - 1, delta), link_count * delta};
}

EndpointError empirical_endpoint_error(const PiecewiseLinearPath& path, const CSpaceCurve& curve,
                                       const RobotSpec& spec, const EndpointErrorOptions& options) {
  if (path.dimension() != curve.dimension() ||
      static_cast<int>(curve.dimension()) != spec.link_count)
    throw DimensionError("path, curve and robot must share N");
  const std::vector<JointVector> path_theta = path.dense_samples(options.path_samples);
  const std::vector<JointVector> curve_theta = curve.sample(options.curve_samples);

  std::vector<Endpoint> path_pts;
  std::vector<Endpoint> curve_pts;
  path_pts.reserve(path_theta.size());
  curve_pts.reserve(curve_theta.size());
  for (const auto& t : path_theta) path_pts.push_back(endpoint_of(spec.link_length, t));
  for (const auto& t : curve_theta) curve_pts.push_back(endpoint_of(spec.link_length, t));

  EndpointError err;
  for (std::size_t k = 1; k < curve_pts.size(); ++k) {
    const double gap = std::hypot(curve_pts[k].x - curve_pts[k - 1].x,
                                  curve_pts[k].y - curve_pts[k - 1].y);
    err.discretization = std::max(err.discretization, 0.5 * gap);
  }

  const EndpointSet curve_set(curve_pts);
  const EndpointSet path_set(path_pts);
  double backward = 0.0;
  for (const auto& p : path_pts) err.one_sided = std::max(err.one_sided, curve_set.nearest(p));
  for (const auto& q : curve_pts) backward = std::max(backward, path_set.nearest(q));
  err.symmetric = std::max(err.one_sided, backward);

  // Orientation is compared at the reference configuration closest in c-space.
  for (std::size_t k = 0; k < path_theta.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t j = 0; j < curve_theta.size(); ++j) {
      const double d = (path_theta[k] - curve_theta[j]).cwiseAbs().maxCoeff();
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    err.orientation =
        std::max(err.orientation, std::abs(path_pts[k].heading - curve_pts[arg].heading));
  }
  return err;
}

double orientation_error(const JointVector& theta, const JointVector& reference) {
  require_same_length(theta, reference);
  return std::abs((theta - reference).sum());
}

JointVector per_link_orientation_deviation(const JointVector& theta, const JointVector& reference) {
  require_same_length(theta, reference);
  return (link_orientations(theta) - link_orientations(reference)).cwiseAbs();
}

std::string error_report_csv_header() {
  return "delta,bound_pos,bound_ori,empirical_pos,empirical_ori";
}

std::string error_report_csv_row(const ErrorReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g", r.delta, r.bound_position,
                r.bound_orientation, r.empirical_position, r.empirical_orientation);
  return buf;
}

}  // namespace masr

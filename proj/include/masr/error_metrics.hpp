#pragma once

#include <string>
#include <vector>

#include "masr/curve.hpp"
#include "masr/path.hpp"
#include "masr/robot.hpp"

namespace masr {

// Worst-case endpoint deviation 2L * sum_{i=1..N} sin(i delta / 2) for joint
// errors bounded by delta. Valid only while N delta <= pi/2; DomainError
// otherwise.
double endpoint_error_bound(int link_count, double link_length, double delta);

struct PoseBounds {
  double position = 0.0;
  double orientation = 0.0;
};

// Position bound over the first N - 1 links and orientation bound N delta,
// for arms whose last joint sets the tool orientation.
PoseBounds planar_pose_bounds(int link_count, double link_length, double delta);

struct EndpointErrorOptions {
  std::size_t path_samples = 2000;
  std::size_t curve_samples = 2000;
};

struct EndpointError {
  double one_sided = 0.0;    // max_t min_u ||x_e(t) - x_e0(u)||_2
  double symmetric = 0.0;    // max of both directed distances
  double orientation = 0.0;  // max_t |Theta_e(t) - Theta_e0(u*)| at the c-space nearest u*
  // Half the largest gap between consecutive curve-side endpoint samples:
  // how far the sampled minimum can exceed the true one.
  double discretization = 0.0;
};

EndpointError empirical_endpoint_error(const PiecewiseLinearPath& path, const CSpaceCurve& curve,
                                       const RobotSpec& spec,
                                       const EndpointErrorOptions& options = {});

// |sum(theta_i - theta0_i)|
double orientation_error(const JointVector& theta, const JointVector& reference);

// |alpha_i - alpha0_i| per link.
JointVector per_link_orientation_deviation(const JointVector& theta, const JointVector& reference);

struct ErrorReport {
  double delta = 0.0;
  double bound_position = 0.0;
  double bound_orientation = 0.0;
  double empirical_position = 0.0;
  double empirical_orientation = 0.0;
};

std::string error_report_csv_header();
std::string error_report_csv_row(const ErrorReport& report);

}  // namespace masr

#pragma once

#include <string>
#include <vector>

#include "masr/robot.hpp"

namespace masr {

// Trajectory of the reduced-actuation robot: straight c-space segments
// between breakpoints, each moving only the joints in its active set.
class PiecewiseLinearPath {
 public:
  PiecewiseLinearPath() = default;
  explicit PiecewiseLinearPath(JointVector start);

  // Appends a segment ending at `point`; the active set is the list of
  // joints (1-based) whose angle changes.
  void append(const JointVector& point);
  // Marks the last breakpoint as lying on the reference curve at `param`.
  void mark_anchor(double param);

  const std::vector<JointVector>& breakpoints() const { return breakpoints_; }
  const std::vector<std::vector<int>>& active_sets() const { return active_; }
  const std::vector<std::size_t>& anchor_indices() const { return anchor_indices_; }
  const std::vector<double>& anchor_params() const { return anchor_params_; }

  std::size_t segment_count() const { return active_.size(); }
  std::size_t dimension() const;
  // Largest number of joints moved by a single segment.
  std::size_t max_active() const;
  double length() const;

  // f(t), t in [0,1], parametrized by cumulative Euclidean arc length.
  JointVector at(double t) const;

  // Points along the path: every breakpoint plus `count` arc-length samples.
  std::vector<JointVector> dense_samples(std::size_t count) const;

  // One row per breakpoint: index, angles, joints moved to reach it.
  std::string to_csv() const;

 private:
  std::vector<JointVector> breakpoints_;
  std::vector<std::vector<int>> active_;
  std::vector<double> cumulative_;  // arc length at each breakpoint
  std::vector<std::size_t> anchor_indices_;
  std::vector<double> anchor_params_;
};

}  // namespace masr

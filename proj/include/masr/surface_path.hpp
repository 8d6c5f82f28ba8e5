#pragma once

#include <optional>
#include <vector>

#include "masr/robot.hpp"

namespace masr {

// Axis-aligned box in R^N; may be degenerate along some axes.
struct Hypercuboid {
  JointVector lower;
  JointVector upper;

  std::size_t dimension() const { return static_cast<std::size_t>(lower.size()); }
  bool contains(const JointVector& x, double tolerance = 0.0) const;
  JointVector side_lengths() const { return upper - lower; }
};

Hypercuboid spanning_hypercuboid(const JointVector& a, const JointVector& b);

struct SurfacePathOptions {
  // 1-based joint the (single) actuator currently sits on. Used to order
  // edge moves for M = 1 so the actuator travels as little as possible.
  std::optional<int> actuator_joint;
};

// Shortest path from corner `from` to the opposite corner `to` of the box
// they span, restricted to its M-dimensional faces. Returns the N - M
// intermediate vertices followed by `to`; zero-length moves are dropped.
//
//  * M = N: the diagonal itself.
//  * M = 1: one move per axis (edge path). Every axis order has the same
//    Manhattan length; the order is chosen to minimise actuator travel.
//  * M = 2: exact geodesic over the 2-faces, found by unfolding every face
//    sequence into a plane and keeping the shortest straight development.
//  * 3 <= M < N: staircase that carries the M - 1 widest axes across all
//    segments while completing the rest one at a time.
std::vector<JointVector> surface_shortest_path(const JointVector& from, const JointVector& to,
                                               int actuator_count,
                                               const SurfacePathOptions& options = {});

// Euclidean length of from -> vertices[0] -> ... -> vertices.back().
double polyline_length(const JointVector& from, const std::vector<JointVector>& vertices);

}  // namespace masr

#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "masr/robot.hpp"

namespace masr {

// A C0 curve u in [0,1] -> R^N. Evaluation must be re-entrant; the curve
// is an immutable handle and cheap to copy.
class CSpaceCurve {
 public:
  using Evaluator = std::function<JointVector(double)>;

  CSpaceCurve(std::size_t dimension, Evaluator evaluator);

  // Piecewise-linear interpolation of samples taken at u_k = k / (n - 1).
  static CSpaceCurve from_samples(std::vector<JointVector> samples);
  // Straight segment a -> b.
  static CSpaceCurve segment(const JointVector& a, const JointVector& b);

  // u is clamped into [0,1].
  JointVector operator()(double u) const;
  std::size_t dimension() const { return dimension_; }

  // Uniform samples including both ends; count >= 2.
  std::vector<JointVector> sample(std::size_t count) const;

  // The interpolation nodes when built from samples, empty otherwise.
  const std::vector<JointVector>& nodes() const;

 private:
  std::size_t dimension_;
  Evaluator evaluator_;
  std::shared_ptr<const std::vector<JointVector>> nodes_;
};

}  // namespace masr

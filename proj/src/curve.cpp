#include "masr/curve.hpp"

#include <algorithm>
#include <cmath>

namespace masr {

namespace {
const std::vector<JointVector> kNoNodes;
}

CSpaceCurve::CSpaceCurve(std::size_t dimension, Evaluator evaluator)
    : dimension_(dimension), evaluator_(std::move(evaluator)) {
  if (!evaluator_) throw ParameterError("curve evaluator is empty");
}

CSpaceCurve CSpaceCurve::from_samples(std::vector<JointVector> samples) {
  if (samples.size() < 2) throw ParameterError("a sampled curve needs at least two samples");
  const auto dim = static_cast<std::size_t>(samples.front().size());
  for (const auto& s : samples) {
    if (static_cast<std::size_t>(s.size()) != dim)
      throw DimensionError("curve samples differ in dimension");
    if (!s.allFinite()) throw ParameterError("curve samples must be finite");
  }
  auto nodes = std::make_shared<const std::vector<JointVector>>(std::move(samples));
  CSpaceCurve curve(dim, [nodes](double u) -> JointVector {
    const auto& pts = *nodes;
    const double span = static_cast<double>(pts.size() - 1);
    const double x = std::clamp(u, 0.0, 1.0) * span;
    auto k = static_cast<std::size_t>(std::floor(x));
    if (k >= pts.size() - 1) return pts.back();
    const double w = x - static_cast<double>(k);
    if (w == 0.0) return pts[k];
    return pts[k] + w * (pts[k + 1] - pts[k]);
  });
  curve.nodes_ = std::move(nodes);
  return curve;
}

CSpaceCurve CSpaceCurve::segment(const JointVector& a, const JointVector& b) {
  if (a.size() != b.size()) throw DimensionError("segment end points differ in dimension");
  return CSpaceCurve(static_cast<std::size_t>(a.size()), [a, b](double u) -> JointVector {
    const double w = std::clamp(u, 0.0, 1.0);
    if (w == 0.0) return a;
    if (w == 1.0) return b;
    return a + w * (b - a);
  });
}

JointVector CSpaceCurve::operator()(double u) const {
  return evaluator_(std::clamp(u, 0.0, 1.0));
}

std::vector<JointVector> CSpaceCurve::sample(std::size_t count) const {
  if (count < 2) throw ParameterError("need at least two samples");
  std::vector<JointVector> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    out.push_back((*this)(static_cast<double>(k) / static_cast<double>(count - 1)));
  return out;
}

const std::vector<JointVector>& CSpaceCurve::nodes() const {
  return nodes_ ? *nodes_ : kNoNodes;
}

}  // namespace masr

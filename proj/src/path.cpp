#include "masr/path.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace masr {

PiecewiseLinearPath::PiecewiseLinearPath(JointVector start) {
  breakpoints_.push_back(std::move(start));
  cumulative_.push_back(0.0);
}

void PiecewiseLinearPath::append(const JointVector& point) {
  if (breakpoints_.empty()) {
    breakpoints_.push_back(point);
    cumulative_.push_back(0.0);
    return;
  }
  const JointVector& last = breakpoints_.back();
  if (point.size() != last.size()) throw DimensionError("breakpoint dimension mismatch");
  std::vector<int> active;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    if (point[i] != last[i]) active.push_back(static_cast<int>(i) + 1);
  }
  const double step = (point - last).norm();
  breakpoints_.push_back(point);
  active_.push_back(std::move(active));
  cumulative_.push_back(cumulative_.back() + step);
}

void PiecewiseLinearPath::mark_anchor(double param) {
  if (breakpoints_.empty()) throw ParameterError("no breakpoint to anchor");
  anchor_indices_.push_back(breakpoints_.size() - 1);
  anchor_params_.push_back(param);
}

std::size_t PiecewiseLinearPath::dimension() const {
  return breakpoints_.empty() ? 0 : static_cast<std::size_t>(breakpoints_.front().size());
}

std::size_t PiecewiseLinearPath::max_active() const {
  std::size_t most = 0;
  for (const auto& a : active_) most = std::max(most, a.size());
  return most;
}

double PiecewiseLinearPath::length() const {
  return cumulative_.empty() ? 0.0 : cumulative_.back();
}

JointVector PiecewiseLinearPath::at(double t) const {
  if (breakpoints_.empty()) throw ParameterError("empty path");
  const double total = length();
  if (total == 0.0 || t <= 0.0) return breakpoints_.front();
  if (t >= 1.0) return breakpoints_.back();
  const double s = t * total;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const auto k = static_cast<std::size_t>(std::distance(cumulative_.begin(), it)) - 1;
  if (k + 1 >= breakpoints_.size()) return breakpoints_.back();
  const double seg = cumulative_[k + 1] - cumulative_[k];
  if (seg == 0.0) return breakpoints_[k];
  const double w = (s - cumulative_[k]) / seg;
  return breakpoints_[k] + w * (breakpoints_[k + 1] - breakpoints_[k]);
}

std::vector<JointVector> PiecewiseLinearPath::dense_samples(std::size_t count) const {
  std::vector<JointVector> out(breakpoints_.begin(), breakpoints_.end());
  if (count >= 2) {
    out.reserve(out.size() + count);
    for (std::size_t k = 0; k < count; ++k)
      out.push_back(at(static_cast<double>(k) / static_cast<double>(count - 1)));
  }
  return out;
}

std::string PiecewiseLinearPath::to_csv() const {
  std::ostringstream out;
  const std::size_t n = dimension();
  out << "index";
  for (std::size_t i = 1; i <= n; ++i) out << ",theta" << i;
  out << ",active\n";
  char buf[64];
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    out << k;
    for (Eigen::Index i = 0; i < breakpoints_[k].size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", breakpoints_[k][i]);
      out << ',' << buf;
    }
    out << ',';
    if (k > 0) {
      const auto& active = active_[k - 1];
      for (std::size_t a = 0; a < active.size(); ++a) out << (a ? ";" : "") << active[a];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace masr

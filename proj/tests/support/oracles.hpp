#pragma once

// Reference computations written without the library's kinematics so the
// tests compare two independent derivations.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

namespace oracle {

using Vec = Eigen::VectorXd;

// Joint positions by chaining homogeneous transforms.
inline std::vector<Eigen::Vector2d> chain_fk(double L, const Vec& theta) {
  Eigen::Matrix3d T = Eigen::Matrix3d::Identity();
  std::vector<Eigen::Vector2d> pts{Eigen::Vector2d::Zero()};
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Eigen::Matrix3d R;
    R << std::cos(theta[i]), -std::sin(theta[i]), 0, std::sin(theta[i]), std::cos(theta[i]), 0, 0, 0, 1;
    Eigen::Matrix3d X = Eigen::Matrix3d::Identity();
    X(0, 2) = L;
    T = T * R * X;
    pts.emplace_back(T(0, 2), T(1, 2));
  }
  return pts;
}

inline Eigen::Vector2d tip(double L, const Vec& theta) { return chain_fk(L, theta).back(); }

inline Eigen::MatrixXd jacobian_fd(double L, const Vec& theta, double h = 1e-6) {
  Eigen::MatrixXd J(2, theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Vec a = theta, b = theta;
    a[i] += h;
    b[i] -= h;
    J.col(i) = (tip(L, a) - tip(L, b)) / (2 * h);
  }
  return J;
}

inline double wrap(double a) { return std::remainder(a, 2 * std::numbers::pi); }

inline double wrapped_inf(const Vec& a, const Vec& b) {
  double m = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) m = std::max(m, std::abs(wrap(a[i] - b[i])));
  return m;
}

struct GridMax {
  std::vector<Vec> maxima;  // all grid maxima tied with the best value
  double value = 0;
};

// Scans joint 1 over `n` points of the circle, solving the remaining two
// links in closed form for both elbow signs, and keeps every local maximum
// of det(J J^T) whose value ties with the best.
inline GridMax redundancy_grid(double L, const Eigen::Vector2d& target, int n = 4096) {
  struct Sample {
    Vec theta;
    double m;
  };
  std::vector<std::vector<Sample>> branches(2);
  for (int k = 0; k < n; ++k) {
    const double t1 = -std::numbers::pi + 2 * std::numbers::pi * k / n;
    const Eigen::Vector2d d = target - L * Eigen::Vector2d(std::cos(t1), std::sin(t1));
    const double c = (d.squaredNorm() - 2 * L * L) / (2 * L * L);
    for (int b = 0; b < 2; ++b) {
      if (std::abs(c) > 1) {
        branches[b].push_back({Vec(), -1});
        continue;
      }
      const double t3 = (b == 0 ? 1 : -1) * std::acos(c);
      const double t2 = wrap(std::atan2(d.y(), d.x()) - t1 - std::atan2(std::sin(t3), 1 + std::cos(t3)));
      Vec th(3);
      th << t1, t2, t3;
      const Eigen::MatrixXd J = jacobian_fd(L, th);
      branches[b].push_back({th, (J * J.transpose()).determinant()});
    }
  }
  GridMax out;
  std::vector<Sample> peaks;
  for (const auto& s : branches)
    for (int k = 0; k < n; ++k) {
      const auto& c = s[k];
      if (c.m < 0) continue;
      const auto& p = s[(k + n - 1) % n];
      const auto& q = s[(k + 1) % n];
      if (c.m >= p.m && c.m >= q.m) peaks.push_back(c);
    }
  for (const auto& p : peaks) out.value = std::max(out.value, p.m);
  for (const auto& p : peaks)
    if (p.m >= out.value * (1 - 1e-4)) out.maxima.push_back(p.theta);
  return out;
}

// Smooth random curve in R^n: a sum of a few sinusoids per joint.
inline std::function<Vec(double)> random_curve(std::mt19937& rng, int n, double amplitude) {
  std::uniform_real_distribution<double> U(-1, 1);
  std::uniform_int_distribution<int> F(1, 3);
  struct Term {
    double a, f, phase;
  };
  std::vector<std::vector<Term>> terms(n);
  Vec offset(n);
  for (int i = 0; i < n; ++i) {
    offset[i] = U(rng);
    for (int k = 0; k < 3; ++k) terms[i].push_back({amplitude * U(rng) / (k + 1), double(F(rng)), 3 * U(rng)});
  }
  return [terms, offset, n](double u) {
    Vec v = offset;
    for (int i = 0; i < n; ++i)
      for (const auto& t : terms[i]) v[i] += t.a * std::sin(2 * std::numbers::pi * t.f * u + t.phase);
    return v;
  };
}

// sum_{i=1..N} sin(i d / 2), summed in the opposite order to the library.
inline double bound(int n, double L, double d) {
  double s = 0;
  for (int i = n; i >= 1; --i) s += std::sin(i * d / 2);
  return 2 * L * s;
}

}  // namespace oracle

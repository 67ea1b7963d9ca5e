#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "stabb/monomial.hpp"
#include "stabb/points.hpp"
#include "stabb/rng.hpp"

namespace testutil {

// splitmix64 finalizer, for deriving decorrelated per-case seeds.
inline std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline stabb::PowerProduct pp(const std::string& text, int nvars) {
  return stabb::parse_power_product(text, nvars);
}

// Four points close to the line y = 3x - 2 (last one 0.1 off).
inline Eigen::MatrixXd line_points() {
  Eigen::MatrixXd p(4, 2);
  p << -1, -5, 0, -2, 1, 1, 2, 4.1;
  return p;
}

// The same four points moved exactly onto the line.
inline Eigen::MatrixXd collinear_points() {
  Eigen::MatrixXd p(4, 2);
  p << -1, -5, 0, -2, 1, 1, 2, 4;
  return p;
}

// Ten noisy samples of the ellipse x^2/25 + y^2/68 ~ 1.
inline Eigen::MatrixXd ellipse_points() {
  Eigen::MatrixXd p(10, 2);
  p << -5.07, 0.02, 4.98, 0, 3.05, 8.07, 3.01, -8.02, -3.02, 7.99, -2.98, -8, 4.01, 5.94, 3.98,
      -6.06, -3.92, 6.03, -4.01, -6;
  return p;
}

// Five points near the hyperbola xy = 6, one of them on the bisector.
inline Eigen::MatrixXd five_points() {
  Eigen::MatrixXd p(5, 2);
  p << 1, 6, 2, 3, 2.449, 2.449, 3, 2, 6, 1;
  return p;
}

inline Eigen::VectorXd tol2(double e) { return Eigen::Vector2d(e, e); }

// Least squares via SVD, an algorithmic path independent of the QR-based
// code under test.
inline Eigen::VectorXd svd_ls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a, Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
}

// Coefficients c0..cn (ascending degree, cn = 1) of prod_i (x - roots[i]),
// by repeated convolution with the linear factors.
inline std::vector<double> expand_monic_roots(const std::vector<double>& roots) {
  std::vector<double> coeff{1.0};
  for (double r : roots) {
    std::vector<double> next(coeff.size() + 1, 0.0);
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      next[i] += coeff[i] * -r;
      next[i + 1] += coeff[i];
    }
    coeff = std::move(next);
  }
  return coeff;
}

// Grows a random factor-closed set from {1} by appending a uniformly chosen
// appendable border element at each step.
inline stabb::OrderIdealSet random_order_ideal(stabb::Rng& rng, int nvars, int size) {
  stabb::OrderIdealSet ideal = stabb::OrderIdealSet::unit(nvars);
  while (static_cast<int>(ideal.size()) < size) {
    std::vector<stabb::PowerProduct> appendable;
    for (const stabb::PowerProduct& u : stabb::border(ideal)) {
      bool ok = true;
      for (int i = 0; i < nvars && ok; ++i)
        if (u.exponent(i) > 0 && !ideal.contains(u.divided_by_variable(i))) ok = false;
      if (ok) appendable.push_back(u);
    }
    std::size_t pick = static_cast<std::size_t>(rng.uniform() * appendable.size());
    if (pick >= appendable.size()) pick = appendable.size() - 1;
    ideal.append(appendable[pick]);
  }
  return ideal;
}

struct RandomSet {
  Eigen::MatrixXd points;
  Eigen::VectorXd tolerance;
};

// Uniform points in a box, tolerances in [tol_lo, tol_hi], resampled until
// the set is pairwise distinct at that tolerance.
inline RandomSet random_point_set(stabb::Rng& rng, int s, int n, double tol_lo, double tol_hi) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd points(s, n);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < n; ++j) points(i, j) = rng.uniform(-5.0, 5.0);
    Eigen::VectorXd tol(n);
    for (int j = 0; j < n; ++j) tol[j] = rng.uniform(tol_lo, tol_hi);
    stabb::EmpiricalPointSet x(points, tol);
    if (stabb::indistinct_pairs(x).empty()) return RandomSet{std::move(points), std::move(tol)};
  }
  throw std::runtime_error("could not sample a distinct point set");
}

}  // namespace testutil

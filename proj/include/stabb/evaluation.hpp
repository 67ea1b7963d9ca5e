#pragma once

#include <span>

#include "stabb/firstorder.hpp"
#include "stabb/monomial.hpp"

namespace stabb {

template <class Scalar>
Scalar int_power(Scalar base, int exponent) {
  Scalar result(1);
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

template <class Scalar>
Scalar eval_power_product(const PowerProduct& t, const VecX<Scalar>& point) {
  if (point.size() != t.nvars()) throw std::invalid_argument("point dimension mismatch");
  Scalar result(1);
  for (int i = 0; i < t.nvars(); ++i) result *= int_power(point[i], t.exponent(i));
  return result;
}

// Gradient of the power product at the point, one entry per variable.
template <class Scalar>
VecX<Scalar> eval_gradient(const PowerProduct& t, const VecX<Scalar>& point) {
  if (point.size() != t.nvars()) throw std::invalid_argument("point dimension mismatch");
  VecX<Scalar> g(t.nvars());
  for (int j = 0; j < t.nvars(); ++j) {
    int a = t.exponent(j);
    if (a == 0) {
      g[j] = Scalar(0);
      continue;
    }
    Scalar partial(a);
    for (int i = 0; i < t.nvars(); ++i)
      partial *= int_power(point[i], i == j ? a - 1 : t.exponent(i));
    g[j] = partial;
  }
  return g;
}

// Rows are points, columns follow the given term listing.
template <class Scalar>
MatX<Scalar> evaluation_matrix(std::span<const PowerProduct> terms, const MatX<Scalar>& points) {
  MatX<Scalar> m(points.rows(), static_cast<Eigen::Index>(terms.size()));
  for (Eigen::Index k = 0; k < points.rows(); ++k) {
    VecX<Scalar> p = points.row(k).transpose();
    for (std::size_t j = 0; j < terms.size(); ++j)
      m(k, static_cast<Eigen::Index>(j)) = eval_power_product(terms[j], p);
  }
  return m;
}

// Evaluation of one power product at every point, carrying the first-order
// dependence on the per-coordinate error variables of each point. Row k only
// involves the error variables of point k.
template <class Scalar>
FirstOrderVector<Scalar> eval_first_order(const PowerProduct& t, const MatX<Scalar>& points) {
  const int s = static_cast<int>(points.rows());
  const int n = static_cast<int>(points.cols());
  FirstOrderVector<Scalar> v;
  v.value.resize(s);
  v.jacobian = MatX<Scalar>::Zero(s, static_cast<Eigen::Index>(n) * s);
  for (int k = 0; k < s; ++k) {
    VecX<Scalar> p = points.row(k).transpose();
    v.value[k] = eval_power_product(t, p);
    VecX<Scalar> g = eval_gradient(t, p);
    for (int j = 0; j < n; ++j) v.jacobian(k, error_column(k, j, s)) = g[j];
  }
  return v;
}

template <class Scalar>
FirstOrderMatrix<Scalar> evaluation_matrix_first_order(std::span<const PowerProduct> terms,
                                                       const MatX<Scalar>& points) {
  FirstOrderMatrix<Scalar> m;
  for (const PowerProduct& t : terms) m.append_column(eval_first_order(t, points));
  return m;
}

}  // namespace stabb

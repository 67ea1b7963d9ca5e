#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace stabb {

template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Index of the error variable perturbing coordinate `var` of point `point`
// inside a jacobian with `count` points: variables are grouped by coordinate.
inline int error_column(int point, int var, int count) { return var * count + point; }

// A vector v0 + sum_mu e_mu * v1[:,mu] truncated at first order in the error
// variables e. jacobian has one column per error variable.
template <class Scalar>
struct FirstOrderVector {
  VecX<Scalar> value;
  MatX<Scalar> jacobian;

  int size() const { return static_cast<int>(value.size()); }
  int nerr() const { return static_cast<int>(jacobian.cols()); }
};

// A matrix M0 + sum_mu e_mu * M1^(mu), stored column by column: entry
// column_jacobians[j](k, mu) is d M(k, j) / d e_mu.
template <class Scalar>
struct FirstOrderMatrix {
  MatX<Scalar> value;
  std::vector<MatX<Scalar>> column_jacobians;

  int rows() const { return static_cast<int>(value.rows()); }
  int cols() const { return static_cast<int>(value.cols()); }
  int nerr() const {
    return column_jacobians.empty() ? 0 : static_cast<int>(column_jacobians.front().cols());
  }

  void append_column(const FirstOrderVector<Scalar>& v) {
    if (cols() > 0 && v.size() != rows()) throw std::invalid_argument("column length mismatch");
    if (cols() > 0 && v.nerr() != nerr())
      throw std::invalid_argument("error variable count mismatch");
    MatX<Scalar> grown(v.size(), cols() + 1);
    if (cols() > 0) grown.leftCols(cols()) = value;
    grown.col(cols()) = v.value;
    value = std::move(grown);
    column_jacobians.push_back(v.jacobian);
  }

  FirstOrderVector<Scalar> column(int j) const {
    return FirstOrderVector<Scalar>{value.col(j), column_jacobians.at(static_cast<std::size_t>(j))};
  }
};

template <class Scalar>
struct FirstOrderLSResult {
  VecX<Scalar> solution;            // alpha0
  MatX<Scalar> solution_jacobian;   // alpha1, one column per error variable
  VecX<Scalar> residual;            // rho0 = v0 - M0 alpha0
  MatX<Scalar> residual_jacobian;   // rho1 = v1 - M0 alpha1 - M1 alpha0
};

// Least squares of a first-order matrix against a first-order vector. M0 must
// have full column rank. The zero-order part is the ordinary LS solution; the
// first-order part solves the normal equations differentiated in each error
// variable, so M0^T rho0 = 0 and M0^T rho1 + M1^T rho0 = 0 hold exactly.
template <class Scalar>
FirstOrderLSResult<Scalar> ls_first_order(const FirstOrderMatrix<Scalar>& m,
                                          const FirstOrderVector<Scalar>& v) {
  const int k = m.cols();
  if (v.size() != m.rows()) throw std::invalid_argument("vector length mismatch");
  if (v.nerr() != m.nerr()) throw std::invalid_argument("error variable count mismatch");
  Eigen::ColPivHouseholderQR<MatX<Scalar>> qr(m.value);
  if (qr.rank() < k) throw std::runtime_error("evaluation matrix lost full column rank");

  FirstOrderLSResult<Scalar> out;
  out.solution = qr.solve(v.value);
  out.residual = v.value - m.value * out.solution;

  const int nerr = m.nerr();
  MatX<Scalar> w = MatX<Scalar>::Zero(m.rows(), nerr);
  for (int j = 0; j < k; ++j) w += out.solution[j] * m.column_jacobians[static_cast<std::size_t>(j)];

  MatX<Scalar> rhs = m.value.transpose() * (v.jacobian - w);
  for (int j = 0; j < k; ++j)
    rhs.row(j) += out.residual.transpose() * m.column_jacobians[static_cast<std::size_t>(j)];

  // (M0^T M0)^-1 rhs through the QR factors: M0 P = Q R.
  MatX<Scalar> r = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
  MatX<Scalar> y = qr.colsPermutation().transpose() * rhs;
  r.template triangularView<Eigen::Upper>().transpose().solveInPlace(y);
  r.template triangularView<Eigen::Upper>().solveInPlace(y);
  out.solution_jacobian = qr.colsPermutation() * y;

  out.residual_jacobian = v.jacobian - m.value * out.solution_jacobian - w;
  return out;
}

// First-order inverse of a square first-order matrix: B0 = A0^-1 and, per
// error variable, B1 = -B0 A1 B0.
template <class Scalar>
FirstOrderMatrix<Scalar> inverse_first_order(const FirstOrderMatrix<Scalar>& a) {
  const int k = a.cols();
  if (a.rows() != k) throw std::invalid_argument("matrix must be square");
  Eigen::FullPivLU<MatX<Scalar>> lu(a.value);
  if (!lu.isInvertible()) throw std::runtime_error("matrix is singular");
  MatX<Scalar> b0 = lu.inverse();

  const int nerr = a.nerr();
  FirstOrderMatrix<Scalar> out;
  out.value = b0;
  out.column_jacobians.assign(static_cast<std::size_t>(k), MatX<Scalar>::Zero(k, nerr));
  MatX<Scalar> a1(k, k);
  for (int mu = 0; mu < nerr; ++mu) {
    for (int c = 0; c < k; ++c) a1.col(c) = a.column_jacobians[static_cast<std::size_t>(c)].col(mu);
    MatX<Scalar> t = -b0 * a1 * b0;
    for (int j = 0; j < k; ++j) out.column_jacobians[static_cast<std::size_t>(j)].col(mu) = t.col(j);
  }
  return out;
}

// Minimal 2-norm solution of A x = b via SVD. Singular values at or below
// 1e-12 times the largest are treated as zero; a numerically zero A gives 0.
template <class Scalar>
VecX<Scalar> min_norm_solution(const MatX<Scalar>& a, const VecX<Scalar>& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("vector length mismatch");
  Eigen::JacobiSVD<MatX<Scalar>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().size() == 0 || svd.singularValues()[0] == Scalar(0))
    return VecX<Scalar>::Zero(a.cols());
  svd.setThreshold(Scalar(1e-12));
  return svd.solve(b);
}

}  // namespace stabb

#include "stabb/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stabb/evaluation.hpp"
#include "stabb/firstorder.hpp"
#include "stabb/rng.hpp"
#include "stabb/scalar.hpp"
#include "stabb/soi.hpp"

namespace stabb {

NotQuotientBasisError::NotQuotientBasisError(int have_, int need_)
    : std::runtime_error("not a quotient basis (#O = " + std::to_string(have_) + " < " +
                         std::to_string(need_) + ")"),
      have(have_),
      need(need_) {}

SingularMatrixError::SingularMatrixError(const std::string& what) : std::runtime_error(what) {}

namespace {

// Rank-deficiency cutoff shared by the basis solver and the verifier.
constexpr double kRankCutoff = 1e-10;

template <class Scalar>
Eigen::MatrixXd to_double_matrix(const MatX<Scalar>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = to_double(m(i, j));
  return out;
}

template <class Scalar>
BorderBasis border_basis_impl(const OrderIdealSet& o, const Eigen::MatrixXd& points,
                              const TermOrdering& ordering) {
  const MatX<Scalar> pts = points.cast<Scalar>();
  const MatX<Scalar> m = evaluation_matrix<Scalar>(o.terms(), pts);

  Eigen::JacobiSVD<MatX<Scalar>> svd(m);
  const auto& sigma = svd.singularValues();
  const Scalar sigma_max = sigma[0];
  const Scalar sigma_min = sigma[sigma.size() - 1];
  if (sigma_max == Scalar(0) || sigma_min <= sigma_max * Scalar(kRankCutoff))
    throw SingularMatrixError("evaluation matrix of the order ideal is singular");

  BorderBasis basis;
  basis.order_ideal = o;
  basis.border = border(o, ordering);
  const MatX<Scalar> b = evaluation_matrix<Scalar>(basis.border, pts);
  Eigen::ColPivHouseholderQR<MatX<Scalar>> qr(m);
  basis.coefficients = to_double_matrix<Scalar>(qr.solve(b));
  return basis;
}

}  // namespace

BorderBasis border_basis(const OrderIdealSet& o, const Eigen::MatrixXd& points,
                         const TermOrdering& ordering, unsigned precision_bits) {
  if (points.cols() != o.nvars())
    throw std::invalid_argument("point dimension must match the order ideal");
  const int s = static_cast<int>(points.rows());
  if (static_cast<int>(o.size()) != s) throw NotQuotientBasisError(static_cast<int>(o.size()), s);
  if (precision_bits < 53) throw std::invalid_argument("precision must be at least 53 bits");
  if (precision_bits == 53) return border_basis_impl<double>(o, points, ordering);
  set_extended_precision_bits(precision_bits);
  return border_basis_impl<ExtendedScalar>(o, points, ordering);
}

double max_relative_residual(const BorderBasis& basis, const Eigen::MatrixXd& points) {
  const Eigen::MatrixXd m = evaluation_matrix<double>(basis.order_ideal.terms(), points);
  const Eigen::MatrixXd b = evaluation_matrix<double>(basis.border, points);
  const Eigen::MatrixXd residual = b - m * basis.coefficients;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    const double scale = std::max(1.0, b.col(j).norm());
    worst = std::max(worst, residual.col(j).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

Rational ExactPolynomial::coefficient(const PowerProduct& t) const {
  if (t == leading_term) return Rational(1);
  for (const auto& [term, value] : tail)
    if (term == t) return value;
  return Rational(0);
}

namespace {

Rational eval_exact(const PowerProduct& t, const std::vector<Rational>& point) {
  Rational value(1);
  for (int i = 0; i < t.nvars(); ++i)
    for (int a = 0; a < t.exponent(i); ++a) value *= point[static_cast<std::size_t>(i)];
  return value;
}

// Solves the full-column-rank system [columns] * c = v exactly. Returns false
// when v lies outside the column span.
bool solve_exact(const std::vector<std::vector<Rational>>& columns, const std::vector<Rational>& v,
                 std::vector<Rational>& c) {
  const std::size_t s = v.size();
  const std::size_t k = columns.size();
  std::vector<std::vector<Rational>> aug(s, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = columns[j][i];
    aug[i][k] = v[i];
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t pivot = j;
    while (pivot < s && aug[pivot][j] == 0) ++pivot;
    if (pivot == s) throw std::logic_error("columns are not independent");
    std::swap(aug[j], aug[pivot]);
    for (std::size_t i = j + 1; i < s; ++i) {
      if (aug[i][j] == 0) continue;
      Rational factor = aug[i][j] / aug[j][j];
      for (std::size_t l = j; l <= k; ++l) aug[i][l] -= factor * aug[j][l];
    }
  }
  for (std::size_t i = k; i < s; ++i)
    if (aug[i][k] != 0) return false;
  c.assign(k, Rational(0));
  for (std::size_t j = k; j-- > 0;) {
    Rational sum = aug[j][k];
    for (std::size_t l = j + 1; l < k; ++l) sum -= aug[j][l] * c[l];
    c[j] = sum / aug[j][j];
  }
  return true;
}

}  // namespace

ExactPolynomialBasis bm_quotient_basis(const std::vector<std::vector<Rational>>& points,
                                       const TermOrdering& ordering) {
  if (points.empty()) throw std::invalid_argument("point set must be nonempty");
  const std::size_t s = points.size();
  const int n = ordering.nvars();
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != n)
      throw std::invalid_argument("point dimension must match the ordering");
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j)
      if (points[i] == points[j]) throw std::invalid_argument("duplicate point");

  ExactPolynomialBasis basis;
  std::vector<PowerProduct> accepted;
  std::vector<std::vector<Rational>> columns;
  std::vector<PowerProduct> leading;

  CandidateList candidates({PowerProduct::one(n)}, ordering);
  while (!candidates.empty()) {
    PowerProduct t = candidates.pop_min();
    std::vector<Rational> v(s);
    for (std::size_t i = 0; i < s; ++i) v[i] = eval_exact(t, points[i]);

    std::vector<Rational> c;
    if (solve_exact(columns, v, c)) {
      std::vector<std::pair<PowerProduct, Rational>> tail;
      for (std::size_t i = accepted.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        tail.emplace_back(accepted[i], Rational(-c[i]));
      }
      basis.polynomials.push_back(ExactPolynomial{t, std::move(tail)});
      leading.push_back(t);
      candidates.remove_multiples_of(t);
    } else {
      for (int i = 0; i < n; ++i) {
        PowerProduct u = t.times_variable(i);
        bool excluded = candidates.contains(u) ||
                        std::any_of(leading.begin(), leading.end(),
                                    [&](const PowerProduct& l) { return l.divides(u); });
        if (!excluded) candidates.insert(std::move(u));
      }
      accepted.push_back(std::move(t));
      columns.push_back(std::move(v));
    }
  }

  basis.quotient_basis = OrderIdealSet(std::move(accepted));
  return basis;
}

namespace {

double min_singular_ratio(const Eigen::MatrixXd& m, double* min_value) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma[0];
  const double sigma_min = sigma[sigma.size() - 1];
  *min_value = sigma_min;
  return sigma_max == 0.0 ? 0.0 : sigma_min / sigma_max;
}

}  // namespace

StabilityReport verify_stability(const OrderIdealSet& o, const EmpiricalPointSet& x, int trials,
                                 std::uint64_t seed, std::span<const Perturbation> forced) {
  if (static_cast<int>(o.size()) > x.count())
    throw std::invalid_argument("order ideal larger than the point set");
  if (trials < 0) throw std::invalid_argument("trial count must be nonnegative");

  StabilityReport report;
  std::vector<double> observed;
  auto check = [&](const Perturbation& p) {
    const Eigen::MatrixXd moved = perturbed_points(x, p);
    const Eigen::MatrixXd m = evaluation_matrix<double>(o.terms(), moved);
    double min_value = 0.0;
    if (min_singular_ratio(m, &min_value) < 1e-10) report.failures.push_back(p);
    observed.push_back(min_value);
  };

  for (const Perturbation& p : forced) {
    if (!is_admissible(p, x)) throw std::invalid_argument("forced perturbation is not admissible");
    check(p);
  }
  Rng rng(seed);
  for (int i = 0; i < trials; ++i) check(sample_admissible(x, rng));

  report.trials = static_cast<int>(observed.size());
  if (!observed.empty()) {
    std::sort(observed.begin(), observed.end());
    report.worst_min_singular_value = observed.front();
    report.median_min_singular_value = observed[(observed.size() - 1) / 2];
  }
  report.stable = report.failures.empty();
  return report;
}

bool first_order_stable(const OrderIdealSet& o, const Eigen::MatrixXd& points,
                        const Eigen::VectorXd& tolerance) {
  const int s = static_cast<int>(points.rows());
  const double threshold = acceptance_threshold(s, tolerance);

  FirstOrderMatrix<double> m;
  m.append_column(eval_first_order<double>(o.term(0), points));
  for (std::size_t i = 1; i < o.size(); ++i) {
    FirstOrderVector<double> v = eval_first_order<double>(o.term(i), points);
    FirstOrderLSResult<double> ls = ls_first_order(m, v);
    // Same escape computation as the construction loop, so the radius
    // estimate is consistent with what the construction would decide.
    Eigen::VectorXd e_hat;
    if (ls.residual.norm() <= 1e-12 * std::max(1.0, v.value.norm())) {
      e_hat = Eigen::VectorXd::Zero(ls.residual_jacobian.cols());
    } else {
      e_hat = min_norm_solution<double>(ls.residual_jacobian, -ls.residual);
    }
    if (!(e_hat.norm() > threshold)) return false;
    m.append_column(v);
  }
  return true;
}

double estimate_stability_radius(const OrderIdealSet& o, const Eigen::MatrixXd& points, int trials,
                                 std::uint64_t seed) {
  if (points.cols() != o.nvars())
    throw std::invalid_argument("point dimension must match the order ideal");
  {
    const Eigen::MatrixXd m = evaluation_matrix<double>(o.terms(), points);
    double min_value = 0.0;
    if (min_singular_ratio(m, &min_value) < 1e-10)
      throw SingularMatrixError("evaluation matrix of the order ideal is singular");
  }
  if (o.size() == 1) return std::numeric_limits<double>::infinity();

  const int n = static_cast<int>(points.cols());
  auto oracle = [&](double delta) {
    const Eigen::VectorXd tol = Eigen::VectorXd::Constant(n, delta);
    const EmpiricalPointSet x(points, tol);
    if (!indistinct_pairs(x).empty()) return false;
    try {
      if (!first_order_stable(o, points, tol)) return false;
      return verify_stability(o, x, trials, seed).stable;
    } catch (const std::runtime_error&) {
      return false;
    }
  };

  double lo = 0.0;
  double hi = 1.0 / 1024;
  while (oracle(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > 1e9) return std::numeric_limits<double>::infinity();
  }
  if (lo == 0.0) {
    double d = hi / 2;
    bool found = false;
    while (d > 1e-12) {
      if (oracle(d)) {
        found = true;
        break;
      }
      hi = d;
      d /= 2;
    }
    if (!found) return 0.0;
    lo = d;
  }
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace stabb

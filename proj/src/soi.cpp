#include "stabb/soi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stabb/evaluation.hpp"
#include "stabb/firstorder.hpp"
#include "stabb/scalar.hpp"

namespace stabb {

CandidateList::CandidateList(std::vector<PowerProduct> terms, TermOrdering ordering)
    : terms_(std::move(terms)), ordering_(std::move(ordering)) {
  sort_terms(terms_, ordering_);
  for (std::size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i - 1] == terms_[i]) throw std::invalid_argument("duplicate candidate term");
}

PowerProduct CandidateList::pop_min() {
  if (terms_.empty()) throw std::logic_error("cannot pop from an empty candidate list");
  PowerProduct t = std::move(terms_.front());
  terms_.erase(terms_.begin());
  return t;
}

void CandidateList::insert(PowerProduct t) {
  auto pos = std::lower_bound(terms_.begin(), terms_.end(), t,
                              [&](const PowerProduct& a, const PowerProduct& b) {
                                return ordering_.less(a, b);
                              });
  if (pos != terms_.end() && *pos == t) throw std::logic_error("duplicate candidate term");
  terms_.insert(pos, std::move(t));
}

void CandidateList::remove_multiples_of(const PowerProduct& t) {
  std::erase_if(terms_, [&](const PowerProduct& u) { return t.divides(u); });
}

bool CandidateList::contains(const PowerProduct& t) const {
  return std::find(terms_.begin(), terms_.end(), t) != terms_.end();
}

bool CandidateList::contains_divisor_of(const PowerProduct& t) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const PowerProduct& u) { return u.divides(t); });
}

void update_candidates(CandidateList& candidates, std::span<const PowerProduct> corners,
                       const PowerProduct& accepted, CandidateRule rule) {
  auto corner_divides = [&](const PowerProduct& u) {
    return std::any_of(corners.begin(), corners.end(),
                       [&](const PowerProduct& c) { return c.divides(u); });
  };
  for (int i = 0; i < accepted.nvars(); ++i) {
    PowerProduct u = accepted.times_variable(i);
    bool excluded = rule == CandidateRule::literal
                        ? candidates.contains_divisor_of(u) || corner_divides(u)
                        : candidates.contains(u) || corner_divides(u);
    if (!excluded) candidates.insert(std::move(u));
  }
}

double acceptance_threshold(int count, const Eigen::VectorXd& tolerance) {
  return std::sqrt(static_cast<double>(count)) * tolerance.norm();
}

bool accept_test(const Eigen::VectorXd& e_hat, int count, const Eigen::VectorXd& tolerance) {
  return e_hat.norm() > acceptance_threshold(count, tolerance);
}

namespace {

template <class Scalar>
SOIResult run_soi(const EmpiricalPointSet& x, const TermOrdering& ordering,
                  const SOIOptions& options) {
  const int s = x.count();
  const int n = x.nvars();
  const MatX<Scalar> points = x.points.cast<Scalar>();
  const double threshold = acceptance_threshold(s, x.tolerance);

  SOIResult result;
  result.order_ideal = OrderIdealSet::unit(n);

  std::vector<PowerProduct> variables;
  for (int i = 0; i < n; ++i) variables.push_back(PowerProduct::variable(i, n));
  CandidateList candidates(std::move(variables), ordering);

  FirstOrderMatrix<Scalar> m;
  m.append_column(eval_first_order(PowerProduct::one(n), points));

  while (!candidates.empty()) {
    PowerProduct t = candidates.pop_min();
    FirstOrderVector<Scalar> v = eval_first_order(t, points);
    FirstOrderLSResult<Scalar> ls = ls_first_order(m, v);

    const double rho0_norm = to_double(Scalar(ls.residual.norm()));
    const double v0_norm = to_double(Scalar(v.value.norm()));
    VecX<Scalar> e_hat;
    if (rho0_norm <= 1e-12 * std::max(1.0, v0_norm)) {
      // A vanishing residual (square full-rank matrix) admits no first-order
      // escape; the zero solution is forced rather than computed.
      e_hat = VecX<Scalar>::Zero(ls.residual_jacobian.cols());
    } else {
      e_hat = min_norm_solution<Scalar>(ls.residual_jacobian, -ls.residual);
    }
    const double e_hat_norm = to_double(Scalar(e_hat.norm()));

    const bool accepted = e_hat_norm > threshold;
    result.trace.push_back(TraceEntry{t, e_hat_norm, threshold, accepted});
    if (accepted) {
      m.append_column(v);
      result.order_ideal.append(t);
      update_candidates(candidates, result.corners, t, options.rule);
    } else {
      result.corners.push_back(std::move(t));
      candidates.remove_multiples_of(result.corners.back());
    }
  }

  result.is_quotient_basis = static_cast<int>(result.order_ideal.size()) == s;
  return result;
}

}  // namespace

SOIResult stable_order_ideal(const EmpiricalPointSet& x, const TermOrdering& ordering,
                             const SOIOptions& options) {
  if (ordering.nvars() != x.nvars())
    throw std::invalid_argument("ordering variable count must match the point dimension");
  validate(x);
  if (options.precision_bits < 53)
    throw std::invalid_argument("precision must be at least 53 bits");
  if (options.precision_bits == 53) return run_soi<double>(x, ordering, options);
  set_extended_precision_bits(options.precision_bits);
  return run_soi<ExtendedScalar>(x, ordering, options);
}

SOIResult stable_order_ideal(const EmpiricalPointSet& x) {
  return stable_order_ideal(x, TermOrdering(x.nvars()), SOIOptions{});
}

}  // namespace stabb

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabb/monomial.hpp"
#include "stabb/points.hpp"
#include "stabb/rational.hpp"

namespace stabb {

class NotQuotientBasisError : public std::runtime_error {
public:
  NotQuotientBasisError(int have, int need);
  int have;
  int need;
};

class SingularMatrixError : public std::runtime_error {
public:
  explicit SingularMatrixError(const std::string& what);
};

// The polynomials g_j = b_j - sum_i coefficients(i, j) * t_i, one per border
// term b_j of the order ideal (t_1, ..., t_s); each vanishes approximately on
// the points the basis was built from.
struct BorderBasis {
  OrderIdealSet order_ideal;
  std::vector<PowerProduct> border;
  Eigen::MatrixXd coefficients;
};

// Solves the square evaluation system of the order ideal against every border
// term. Requires |O| = point count and an invertible evaluation matrix.
BorderBasis border_basis(const OrderIdealSet& o, const Eigen::MatrixXd& points,
                         const TermOrdering& ordering, unsigned precision_bits = 53);

// Largest absolute evaluation residual of any basis polynomial at any point,
// divided by max(1, largest border-column norm).
double max_relative_residual(const BorderBasis& basis, const Eigen::MatrixXd& points);

// A polynomial leading_term + sum of tail coefficient*term with exact
// rational coefficients; the tail is kept in descending term order and holds
// no zero coefficients.
struct ExactPolynomial {
  PowerProduct leading_term;
  std::vector<std::pair<PowerProduct, Rational>> tail;

  // 1 for the leading term, the stored value for a tail term, otherwise 0.
  Rational coefficient(const PowerProduct& t) const;
};

struct ExactPolynomialBasis {
  std::vector<ExactPolynomial> polynomials;
  OrderIdealSet quotient_basis;
};

// Exact construction of the reduced basis of the vanishing ideal of the
// points, processing terms upward in the ordering: a term whose evaluation
// column depends on the accepted ones yields a basis polynomial, an
// independent one joins the quotient basis. All arithmetic is rational, so
// every returned polynomial vanishes exactly on the points.
ExactPolynomialBasis bm_quotient_basis(const std::vector<std::vector<Rational>>& points,
                                       const TermOrdering& ordering);

struct StabilityReport {
  int trials = 0;
  std::optional<double> worst_min_singular_value;
  std::optional<double> median_min_singular_value;
  std::vector<Perturbation> failures;
  bool stable = true;
};

// Samples admissible perturbations of the point set and checks the order
// ideal's evaluation matrix for rank deficiency (smallest singular value
// below 1e-10 times the largest). forced perturbations are evaluated first
// and must be admissible.
StabilityReport verify_stability(const OrderIdealSet& o, const EmpiricalPointSet& x, int trials,
                                 std::uint64_t seed,
                                 std::span<const Perturbation> forced = {});

// First-order stability of the ideal's own listing at a uniform tolerance:
// every term after the first must pass the acceptance test against the
// columns of its predecessors. This sees the directional near-degeneracies a
// finite random sample almost surely misses.
bool first_order_stable(const OrderIdealSet& o, const Eigen::MatrixXd& points,
                        const Eigen::VectorXd& tolerance);

// Empirical lower bound for the largest uniform tolerance delta at which the
// order ideal stays stable: doubling then bisection on delta, where a level
// counts as stable when the points remain pairwise distinct, the sampled
// verifier sees no rank failure, and the first-order test passes. Returns the
// largest probed stable delta; +infinity for the trivial ideal {1}.
double estimate_stability_radius(const OrderIdealSet& o, const Eigen::MatrixXd& points,
                                 int trials, std::uint64_t seed = 1);

}  // namespace stabb

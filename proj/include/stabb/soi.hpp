#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "stabb/monomial.hpp"
#include "stabb/points.hpp"

namespace stabb {

// Variant of the candidate-update rule applied after accepting a term t.
// literal: x_i*t enters the list iff it is a multiple of no current candidate
// and no corner. bm: x_i*t enters iff it is not already listed and is a
// multiple of no corner. The variants differ only transiently; literal is the
// default.
enum class CandidateRule { literal, bm };

struct SOIOptions {
  CandidateRule rule = CandidateRule::literal;
  unsigned precision_bits = 53;
};

struct TraceEntry {
  PowerProduct term;
  double e_hat_norm;
  double threshold;
  bool accepted;
};

struct SOIResult {
  OrderIdealSet order_ideal;
  std::vector<PowerProduct> corners;
  bool is_quotient_basis = false;
  std::vector<TraceEntry> trace;
};

// The list L of untested terms, kept ascending in the ordering, duplicate
// free. Pops always take the current minimum, so across a whole run the
// popped terms are strictly increasing.
class CandidateList {
public:
  CandidateList(std::vector<PowerProduct> terms, TermOrdering ordering);

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PowerProduct>& terms() const { return terms_; }

  PowerProduct pop_min();
  void insert(PowerProduct t);
  void remove_multiples_of(const PowerProduct& t);
  bool contains(const PowerProduct& t) const;
  bool contains_divisor_of(const PowerProduct& t) const;

private:
  std::vector<PowerProduct> terms_;
  TermOrdering ordering_;
};

void update_candidates(CandidateList& candidates, std::span<const PowerProduct> corners,
                       const PowerProduct& accepted, CandidateRule rule);

double acceptance_threshold(int count, const Eigen::VectorXd& tolerance);

// Accept iff ||e_hat|| strictly exceeds sqrt(s)*||tolerance||; ties reject.
bool accept_test(const Eigen::VectorXd& e_hat, int count, const Eigen::VectorXd& tolerance);

// Stepwise construction of an order ideal whose evaluation matrix stays full
// rank, to first order, under every admissible perturbation of the points.
// Each candidate term is kept out of the ideal (it becomes a corner) when
// some admissible perturbation can, to first order, drive its evaluation
// column into the span of the accepted columns.
SOIResult stable_order_ideal(const EmpiricalPointSet& x, const TermOrdering& ordering,
                             const SOIOptions& options = {});
SOIResult stable_order_ideal(const EmpiricalPointSet& x);

}  // namespace stabb

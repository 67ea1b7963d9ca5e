#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stabb {

// A power product x1^a1 * ... * xn^an, stored as its exponent vector.
class PowerProduct {
public:
  explicit PowerProduct(std::vector<int> exponents);

  static PowerProduct one(int nvars);
  static PowerProduct variable(int index, int nvars);

  int nvars() const { return static_cast<int>(exponents_.size()); }
  int exponent(int i) const { return exponents_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& exponents() const { return exponents_; }
  int degree() const;
  bool is_one() const;

  PowerProduct times(const PowerProduct& u) const;
  PowerProduct times_variable(int index) const;
  PowerProduct divided_by_variable(int index) const;

  // Componentwise exponent comparison: true iff this divides u.
  bool divides(const PowerProduct& u) const;

  bool operator==(const PowerProduct&) const = default;

private:
  std::vector<int> exponents_;
};

enum class OrderingKind { deglex };

// Degree-lexicographic term ordering: total degree first, ties broken
// lexicographically along the variable precedence (default x1 > x2 > ... > xn).
// 1 is the minimum and the order is compatible with multiplication.
class TermOrdering {
public:
  explicit TermOrdering(int nvars);
  TermOrdering(OrderingKind kind, std::vector<int> precedence);

  int nvars() const { return static_cast<int>(precedence_.size()); }
  OrderingKind kind() const { return kind_; }
  const std::vector<int>& precedence() const { return precedence_; }

  std::strong_ordering compare(const PowerProduct& t, const PowerProduct& u) const;
  bool less(const PowerProduct& t, const PowerProduct& u) const;

private:
  OrderingKind kind_;
  std::vector<int> precedence_;
};

std::strong_ordering compare(const PowerProduct& t, const PowerProduct& u,
                             const TermOrdering& ordering);

// True iff the set equals its factor closure (duplicates ignored).
bool is_order_ideal(std::span<const PowerProduct> terms);

// A factor-closed, duplicate-free set of power products. Terms keep their
// insertion order, which for sets built by the SOI loop is ascending in the
// term ordering, so evaluation-matrix columns line up with the listing.
class OrderIdealSet {
public:
  OrderIdealSet() = default;
  explicit OrderIdealSet(std::vector<PowerProduct> terms);

  static OrderIdealSet unit(int nvars);

  const std::vector<PowerProduct>& terms() const { return terms_; }
  const PowerProduct& term(std::size_t i) const { return terms_[i]; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  int nvars() const;
  bool contains(const PowerProduct& t) const;

  // Appends a term whose proper divisors are all present already.
  void append(PowerProduct t);

  bool operator==(const OrderIdealSet&) const = default;

private:
  std::vector<PowerProduct> terms_;
};

// (x1*O u ... u xn*O) \ O, deduplicated, ascending in the ordering.
std::vector<PowerProduct> border(const OrderIdealSet& ideal, const TermOrdering& ordering);
std::vector<PowerProduct> border(const OrderIdealSet& ideal);

// Minimal generators of the monomial ideal complementing the order ideal:
// the border elements all of whose proper divisors lie inside the ideal.
std::vector<PowerProduct> corners(const OrderIdealSet& ideal, const TermOrdering& ordering);
std::vector<PowerProduct> corners(const OrderIdealSet& ideal);

void sort_terms(std::vector<PowerProduct>& terms, const TermOrdering& ordering);

// Rendering: "x", "y", "z" juxtaposition in up to three variables ("xy^2"),
// bracket-indexed form otherwise ("x[1]^2*x[2]").
std::string to_string(const PowerProduct& t);
std::string to_indexed_string(const PowerProduct& t);

// Accepts both spellings, '*' optional between letter factors.
PowerProduct parse_power_product(std::string_view text, int nvars);

}  // namespace stabb

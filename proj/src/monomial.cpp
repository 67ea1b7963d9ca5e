#include "stabb/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace stabb {

PowerProduct::PowerProduct(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw std::invalid_argument("power product needs at least one variable");
  for (int a : exponents_)
    if (a < 0) throw std::invalid_argument("negative exponent in power product");
}

PowerProduct PowerProduct::one(int nvars) {
  return PowerProduct(std::vector<int>(static_cast<std::size_t>(nvars), 0));
}

PowerProduct PowerProduct::variable(int index, int nvars) {
  if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(index)] = 1;
  return PowerProduct(std::move(e));
}

int PowerProduct::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

bool PowerProduct::is_one() const {
  return std::all_of(exponents_.begin(), exponents_.end(), [](int a) { return a == 0; });
}

PowerProduct PowerProduct::times(const PowerProduct& u) const {
  if (u.nvars() != nvars()) throw std::invalid_argument("variable count mismatch");
  std::vector<int> e(exponents_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += u.exponents_[i];
  return PowerProduct(std::move(e));
}

PowerProduct PowerProduct::times_variable(int index) const {
  std::vector<int> e(exponents_);
  e.at(static_cast<std::size_t>(index)) += 1;
  return PowerProduct(std::move(e));
}

PowerProduct PowerProduct::divided_by_variable(int index) const {
  std::vector<int> e(exponents_);
  int& a = e.at(static_cast<std::size_t>(index));
  if (a == 0) throw std::invalid_argument("power product not divisible by that variable");
  a -= 1;
  return PowerProduct(std::move(e));
}

bool PowerProduct::divides(const PowerProduct& u) const {
  if (u.nvars() != nvars()) throw std::invalid_argument("variable count mismatch");
  for (std::size_t i = 0; i < exponents_.size(); ++i)
    if (exponents_[i] > u.exponents_[i]) return false;
  return true;
}

TermOrdering::TermOrdering(int nvars) : kind_(OrderingKind::deglex) {
  if (nvars <= 0) throw std::invalid_argument("ordering needs at least one variable");
  precedence_.resize(static_cast<std::size_t>(nvars));
  std::iota(precedence_.begin(), precedence_.end(), 0);
}

TermOrdering::TermOrdering(OrderingKind kind, std::vector<int> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
  std::vector<int> seen(precedence_.size(), 0);
  for (int v : precedence_) {
    if (v < 0 || v >= static_cast<int>(precedence_.size()) || seen[static_cast<std::size_t>(v)]++)
      throw std::invalid_argument("precedence must be a permutation of the variables");
  }
  if (precedence_.empty()) throw std::invalid_argument("ordering needs at least one variable");
}

std::strong_ordering TermOrdering::compare(const PowerProduct& t, const PowerProduct& u) const {
  if (t.nvars() != nvars() || u.nvars() != nvars())
    throw std::invalid_argument("variable count mismatch");
  if (auto c = t.degree() <=> u.degree(); c != 0) return c;
  for (int v : precedence_) {
    if (auto c = t.exponent(v) <=> u.exponent(v); c != 0) return c;
  }
  return std::strong_ordering::equal;
}

bool TermOrdering::less(const PowerProduct& t, const PowerProduct& u) const {
  return compare(t, u) < 0;
}

std::strong_ordering compare(const PowerProduct& t, const PowerProduct& u,
                             const TermOrdering& ordering) {
  return ordering.compare(t, u);
}

bool is_order_ideal(std::span<const PowerProduct> terms) {
  auto present = [&](const PowerProduct& t) {
    return std::any_of(terms.begin(), terms.end(), [&](const PowerProduct& u) { return u == t; });
  };
  for (const PowerProduct& t : terms) {
    for (int i = 0; i < t.nvars(); ++i) {
      if (t.exponent(i) > 0 && !present(t.divided_by_variable(i))) return false;
    }
  }
  return true;
}

OrderIdealSet::OrderIdealSet(std::vector<PowerProduct> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = i + 1; j < terms_.size(); ++j) {
      if (terms_[i] == terms_[j]) throw std::invalid_argument("duplicate term in order ideal");
    }
  }
  if (!is_order_ideal(terms_)) throw std::invalid_argument("term set is not factor closed");
}

OrderIdealSet OrderIdealSet::unit(int nvars) {
  OrderIdealSet s;
  s.terms_.push_back(PowerProduct::one(nvars));
  return s;
}

int OrderIdealSet::nvars() const {
  if (terms_.empty()) throw std::logic_error("empty order ideal has no variable count");
  return terms_.front().nvars();
}

bool OrderIdealSet::contains(const PowerProduct& t) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [&](const PowerProduct& u) { return u == t; });
}

void OrderIdealSet::append(PowerProduct t) {
  if (contains(t)) throw std::invalid_argument("duplicate term in order ideal");
  for (int i = 0; i < t.nvars(); ++i) {
    if (t.exponent(i) > 0 && !contains(t.divided_by_variable(i)))
      throw std::invalid_argument("appending the term would break factor closure");
  }
  terms_.push_back(std::move(t));
}

std::vector<PowerProduct> border(const OrderIdealSet& ideal, const TermOrdering& ordering) {
  std::vector<PowerProduct> result;
  for (const PowerProduct& t : ideal.terms()) {
    for (int i = 0; i < t.nvars(); ++i) {
      PowerProduct u = t.times_variable(i);
      if (ideal.contains(u)) continue;
      if (std::find(result.begin(), result.end(), u) == result.end()) result.push_back(u);
    }
  }
  sort_terms(result, ordering);
  return result;
}

std::vector<PowerProduct> border(const OrderIdealSet& ideal) {
  return border(ideal, TermOrdering(ideal.nvars()));
}

std::vector<PowerProduct> corners(const OrderIdealSet& ideal, const TermOrdering& ordering) {
  std::vector<PowerProduct> b = border(ideal, ordering);
  std::vector<PowerProduct> result;
  for (const PowerProduct& t : b) {
    bool minimal = true;
    for (const PowerProduct& u : b) {
      if (!(u == t) && u.divides(t)) {
        minimal = false;
        break;
      }
    }
    if (minimal) result.push_back(t);
  }
  return result;
}

std::vector<PowerProduct> corners(const OrderIdealSet& ideal) {
  return corners(ideal, TermOrdering(ideal.nvars()));
}

void sort_terms(std::vector<PowerProduct>& terms, const TermOrdering& ordering) {
  std::sort(terms.begin(), terms.end(),
            [&](const PowerProduct& a, const PowerProduct& b) { return ordering.less(a, b); });
}

namespace {

const char kLetters[3] = {'x', 'y', 'z'};

void append_factor(std::string& out, const std::string& name, int exponent, bool star) {
  if (exponent == 0) return;
  if (star && !out.empty()) out += '*';
  out += name;
  if (exponent > 1) {
    out += '^';
    out += std::to_string(exponent);
  }
}

}  // namespace

std::string to_string(const PowerProduct& t) {
  if (t.nvars() > 3) return to_indexed_string(t);
  if (t.is_one()) return "1";
  std::string out;
  for (int i = 0; i < t.nvars(); ++i)
    append_factor(out, std::string(1, kLetters[i]), t.exponent(i), false);
  return out;
}

std::string to_indexed_string(const PowerProduct& t) {
  if (t.is_one()) return "1";
  std::string out;
  for (int i = 0; i < t.nvars(); ++i)
    append_factor(out, "x[" + std::to_string(i + 1) + "]", t.exponent(i), true);
  return out;
}

namespace {

// Grammar: product := '1' | factor (('*')? factor)*
//          factor  := name ('^' digits)?
//          name    := 'x' | 'y' | 'z' | 'x[' digits ']'
struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos;
  }

  int parse_number() {
    std::size_t start = pos;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos;
    if (pos == start) throw std::invalid_argument("expected a number in power product");
    return std::stoi(std::string(text.substr(start, pos - start)));
  }

  int parse_variable(int nvars) {
    char c = peek();
    if (c == 'x' && pos + 1 < text.size() && text[pos + 1] == '[') {
      pos += 2;
      int index = parse_number();
      if (done() || peek() != ']') throw std::invalid_argument("missing ']' in power product");
      ++pos;
      if (index < 1 || index > nvars)
        throw std::invalid_argument("variable index out of range in power product");
      return index - 1;
    }
    int index = c == 'x' ? 0 : c == 'y' ? 1 : c == 'z' ? 2 : -1;
    if (index < 0 || index >= nvars)
      throw std::invalid_argument("unknown variable in power product");
    ++pos;
    return index;
  }
};

}  // namespace

PowerProduct parse_power_product(std::string_view text, int nvars) {
  if (nvars <= 0) throw std::invalid_argument("power product needs at least one variable");
  Parser p{text};
  p.skip_space();
  if (p.done()) throw std::invalid_argument("empty power product");
  std::vector<int> exponents(static_cast<std::size_t>(nvars), 0);
  if (p.peek() == '1') {
    ++p.pos;
  } else {
    while (true) {
      int index = p.parse_variable(nvars);
      int exponent = 1;
      if (!p.done() && p.peek() == '^') {
        ++p.pos;
        exponent = p.parse_number();
      }
      exponents[static_cast<std::size_t>(index)] += exponent;
      p.skip_space();
      if (p.done()) break;
      if (p.peek() == '*') {
        ++p.pos;
        p.skip_space();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(p.peek()))) continue;
      break;
    }
  }
  p.skip_space();
  if (!p.done()) throw std::invalid_argument("trailing characters in power product");
  return PowerProduct(std::move(exponents));
}

}  // namespace stabb

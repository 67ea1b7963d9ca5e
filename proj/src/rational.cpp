#include "stabb/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace stabb {

Rational rational_from_decimal(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("not a decimal literal: " + std::string(text)); };
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
  std::string digits;
  std::size_t scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      fail();
    }
  }
  if (!seen_digit) fail();
  mpz_class numerator(digits, 10);
  mpz_class denominator(1);
  for (std::size_t k = 0; k < scale; ++k) denominator *= 10;
  Rational r(numerator, denominator);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string to_fraction_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace stabb

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stabb {

using Rational = mpq_class;

// Parses a plain decimal literal ("-4.1", "2.449", "3") into the exact
// rational it denotes. Scientific notation is not accepted.
Rational rational_from_decimal(std::string_view text);

// "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string to_fraction_string(const Rational& r);

}  // namespace stabb

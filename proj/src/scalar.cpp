#include "stabb/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace stabb {

unsigned set_extended_precision_bits(unsigned bits) {
  if (bits < 53) throw std::invalid_argument("precision must be at least 53 bits");
  auto digits = static_cast<unsigned>(std::ceil(bits * 0.30103));
  ExtendedScalar::default_precision(digits);
  return digits;
}

}  // namespace stabb

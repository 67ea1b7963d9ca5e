#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace stabb {

// Variable-precision float; the working precision is process-global and set
// via set_extended_precision_bits before any values are created.
using ExtendedScalar =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

// bits is the significand size; 53 matches double. Returns decimal digits.
unsigned set_extended_precision_bits(unsigned bits);

inline double to_double(const ExtendedScalar& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

}  // namespace stabb

#pragma once

#include <cstdint>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

// Exact rational arithmetic for the probability oracles.  Doubles are
// dyadic rationals, so converting inputs through Rational keeps every
// oracle sum exact; results are rounded to double only on output.

namespace ndqmc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational to_rational(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

/// Falling factorial m(m-1)...(m-j+1); 1 for j = 0, 0 for j > m.
inline BigInt falling_factorial(std::int64_t m, std::uint32_t j) {
  if (j == 0) return 1;
  if (m < static_cast<std::int64_t>(j)) return 0;
  BigInt v = 1;
  for (std::uint32_t i = 0; i < j; ++i) v *= (m - i);
  return v;
}

inline BigInt binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  BigInt v = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    v *= (n - i);
    v /= (i + 1);
  }
  return v;
}

/// r^e for small nonnegative integer exponents.
inline Rational rational_pow(const Rational& r, std::uint32_t e) {
  Rational v = 1;
  for (std::uint32_t i = 0; i < e; ++i) v *= r;
  return v;
}

}  // namespace ndqmc

#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace brg {

// Exact arithmetic carriers. Everything downstream of a payoff comparison is
// integer or rational; doubles appear only in payoffs and at output time.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt int_pow(BigInt base, unsigned exp) {
  BigInt r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline Rational rat_pow(Rational base, unsigned exp) {
  Rational r = 1;
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1u;
  }
  return r;
}

inline BigInt factorial(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

// m * (m-1) * ... * (m-k+1), i.e. m!/(m-k)!
inline BigInt falling_factorial(unsigned m, unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= BigInt(m - i);
  return r;
}

/// "num/den" in lowest terms, or just "num" for integers ("3/4", "0", "-1/8").
std::string to_fraction_string(const Rational& q);

/// Decimal rendering of an exact rational, printf-%g style: `digits`
/// significant digits, trailing zeros stripped, scientific notation when the
/// exponent falls outside [-4, digits). Computed with integer arithmetic
/// (round half to even), so two equal rationals always render identically.
std::string to_decimal_string(const Rational& q, int digits = 15);

}  // namespace brg

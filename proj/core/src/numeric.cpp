#include "brgames/numeric.hpp"

#include <stdexcept>
#include <string>

namespace brg {

namespace {

// Decimal digit count of a positive integer.
int digit_count(const BigInt& v) {
  return static_cast<int>(v.str().size());
}

BigInt pow10(int e) {
  return int_pow(BigInt(10), static_cast<unsigned>(e));
}

// True iff |q| >= 10^e, without materializing the quotient.
bool at_least_pow10(const BigInt& num, const BigInt& den, int e) {
  if (e >= 0) return num >= den * pow10(e);
  return num * pow10(-e) >= den;
}

}  // namespace

std::string to_fraction_string(const Rational& q) {
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& q, int digits) {
  if (digits < 1) throw std::invalid_argument("need at least 1 significant digit");
  if (q == 0) return "0";

  const bool negative = q < 0;
  const BigInt num = negative ? BigInt(-numerator(q)) : numerator(q);
  const BigInt den = denominator(q);

  // Decimal exponent e with 10^e <= |q| < 10^(e+1).
  int e = digit_count(num) - digit_count(den);
  while (at_least_pow10(num, den, e + 1)) ++e;
  while (!at_least_pow10(num, den, e)) --e;

  // Scale to exactly `digits` integer digits and round half-to-even.
  const int shift = digits - 1 - e;
  const BigInt scaled_num = shift >= 0 ? num * pow10(shift) : num;
  const BigInt scaled_den = shift >= 0 ? den : den * pow10(-shift);
  BigInt t = scaled_num / scaled_den;
  const BigInt rem2 = (scaled_num - t * scaled_den) * 2;
  if (rem2 > scaled_den || (rem2 == scaled_den && t % 2 != 0)) ++t;
  if (t == pow10(digits)) {  // rounding overflowed into one more digit
    t = pow10(digits - 1);
    ++e;
  }

  std::string mantissa = t.str();  // exactly `digits` characters
  std::string out = negative ? "-" : "";
  if (e < -4 || e >= digits) {
    // Scientific: one leading digit, trimmed fraction, two-digit exponent.
    std::size_t last = mantissa.find_last_not_of('0');
    std::string frac = mantissa.substr(1, last == 0 ? 0 : last);
    out += mantissa.substr(0, 1);
    if (!frac.empty()) out += "." + frac;
    const int abs_e = e < 0 ? -e : e;
    out += "e";
    out += (e < 0 ? "-" : "+");
    if (abs_e < 10) out += "0";
    out += std::to_string(abs_e);
    return out;
  }
  if (e >= 0) {
    out += mantissa.substr(0, static_cast<std::size_t>(e + 1));
    std::string frac = mantissa.substr(static_cast<std::size_t>(e + 1));
    const std::size_t last = frac.find_last_not_of('0');
    if (last != std::string::npos) out += "." + frac.substr(0, last + 1);
    return out;
  }
  std::string frac(static_cast<std::size_t>(-e - 1), '0');
  frac += mantissa;
  const std::size_t last = frac.find_last_not_of('0');
  out += "0." + frac.substr(0, last + 1);
  return out;
}

}  // namespace brg

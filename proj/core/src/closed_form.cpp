#include "brgames/closed_form.hpp"

#include <array>
#include <span>
#include <stdexcept>
#include <string>

namespace brg {

namespace {

void check_nm(int n, int m) {
  if (n < 2) throw std::invalid_argument("need at least 2 players, got " + std::to_string(n));
  if (m < 2) throw std::invalid_argument("need at least 2 strategies, got " + std::to_string(m));
}

// One polynomial-in-1/m per supported n: value = (1/m^(n-1)) * sum_j c[j]/m^j.
constexpr std::array<int, 2> kExpansion2 = {2, -1};
constexpr std::array<int, 5> kExpansion3 = {3, -3, 3, -3, 1};
constexpr std::array<int, 10> kExpansion4 = {4, -4, 0, 6, -8, 2, 4, -6, 4, -1};
constexpr std::array<int, 17> kExpansion5 = {5,  -5, 0,  0,  10, -15, 5,  0, 10,
                                             -20, 15, -5, 5,  -10, 10, -5, 1};

Rational evaluate_expansion(std::span<const int> coeffs, int n, int m) {
  const Rational inv_m(1, m);
  Rational value = 0;
  Rational term = rat_pow(inv_m, static_cast<unsigned>(n - 1));
  for (int c : coeffs) {
    value += c * term;
    term *= inv_m;
  }
  return value;
}

}  // namespace

Rational p1(int n, int m) {
  check_nm(n, m);
  const Rational r = Rational(BigInt(m - 1), int_pow(BigInt(m), static_cast<unsigned>(n))) + 1;
  const Rational r_pow = rat_pow(r, static_cast<unsigned>(n - 1));
  const Rational ratio_pow = rat_pow(r / m, static_cast<unsigned>(n - 1));
  return r_pow + Rational(m - 1) / (m - r) * (ratio_pow - 1);
}

Rational p1_expansion(int n, int m) {
  check_nm(n, m);
  switch (n) {
    case 2: return evaluate_expansion(kExpansion2, n, m);
    case 3: return evaluate_expansion(kExpansion3, n, m);
    case 4: return evaluate_expansion(kExpansion4, n, m);
    case 5: return evaluate_expansion(kExpansion5, n, m);
    default:
      throw std::invalid_argument("expansion available for n in {2,3,4,5}, got " +
                                  std::to_string(n));
  }
}

Rational p2_k(int m, int k) {
  check_nm(2, m);
  if (k < 1) throw std::invalid_argument("need k >= 1, got " + std::to_string(k));
  if (k > m) return 0;
  const BigInt ff = falling_factorial(static_cast<unsigned>(m), static_cast<unsigned>(k));
  const BigInt numer = BigInt(2 * m - k) * ff * ff;
  const BigInt denom = int_pow(BigInt(m), static_cast<unsigned>(2 * k + 2)) *
                       factorial(static_cast<unsigned>(k - 1));
  return Rational(numer, denom);
}

Rational convergent_freq_2p(int m) {
  check_nm(2, m);
  Rational sum = 0;
  for (int k = 1; k <= m; ++k) sum += p2_k(m, k);
  return sum;
}

Rational type_b_freq_2p(int m) {
  return convergent_freq_2p(m) - p2_k(m, 1);
}

int crossover_m() {
  // The comparison flips once and stays flipped; the scan cap is just a
  // safety net against an impossible runaway loop.
  for (int m = 2; m <= 1000; ++m) {
    if (type_b_freq_2p(m) > p1(2, m)) return m;
  }
  throw std::logic_error("no crossover found below m = 1000");
}

}  // namespace brg

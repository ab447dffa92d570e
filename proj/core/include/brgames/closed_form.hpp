#pragma once

#include "brgames/numeric.hpp"

namespace brg {

/// Frequency of games that converge to a unique equilibrium under clockwork
/// best-response play, among non-degenerate n-player m-strategy games with
/// independently drawn payoffs:
///   r^(n-1) + (m-1)/(m-r) * ((r/m)^(n-1) - 1),  r = (m-1)/m^n + 1.
/// Exact rational; requires n >= 2, m >= 2.
Rational p1(int n, int m);

/// The same quantity evaluated through its polynomial-in-1/m form, available
/// for n in {2,3,4,5} (throws std::invalid_argument otherwise). Must equal
/// p1(n, m) exactly; kept as an independent evaluation path.
Rational p1_expansion(int n, int m);

/// Frequency of 2-player m-strategy games that converge with exactly k
/// equilibria:
///   (2m-k) / (m^(2k+2) * (k-1)!) * (m!/(m-k)!)^2   for 1 <= k <= m,
/// and exactly 0 for k > m. Requires m >= 2, k >= 1.
Rational p2_k(int m, int k);

/// Frequency of convergent 2-player games: sum of p2_k over k = 1..m.
Rational convergent_freq_2p(int m);

/// Frequency of convergent 2-player games with several equilibria: the same
/// sum starting at k = 2.
Rational type_b_freq_2p(int m);

/// Smallest m >= 2 where multi-equilibrium convergent games overtake
/// unique-equilibrium ones, i.e. type_b_freq_2p(m) > p1(2, m). Found by
/// exact rational comparison, never floating point.
int crossover_m();

}  // namespace brg

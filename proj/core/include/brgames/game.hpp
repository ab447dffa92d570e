#pragma once

#include <cstdint>
#include <vector>

#include "brgames/errors.hpp"

namespace brg {

/// One strategy index per player, 0-based.
struct StrategyProfile {
  std::vector<int> s;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
  friend auto operator<=>(const StrategyProfile&, const StrategyProfile&) = default;
};

/// The strategy choices of every player except `player`, in increasing
/// player order (n-1 entries).
struct Environment {
  int player = 0;
  std::vector<int> others;

  friend bool operator==(const Environment&, const Environment&) = default;
};

/// Finite normal-form game: n players, m strategies each, payoffs stored as a
/// flat player-major tensor indexed by profile rank. Immutable after
/// construction; all queries are const and thread-safe.
class Game {
 public:
  /// `payoffs[i * m^n + profile_rank]` is player i's payoff. Throws
  /// std::invalid_argument on bad sizes or non-finite payoffs.
  Game(int n, int m, std::vector<double> payoffs);

  int players() const { return n_; }
  int strategies() const { return m_; }
  std::uint64_t profile_count() const { return profile_count_; }

  /// rank(s) = sum_j s_j * m^(n-1-j); player 0 is the most significant digit.
  std::uint64_t profile_rank(const StrategyProfile& p) const;
  StrategyProfile profile_unrank(std::uint64_t rank) const;

  double payoff(int player, std::uint64_t profile_rank) const {
    return payoffs_[static_cast<std::size_t>(player) * profile_count_ + profile_rank];
  }
  double payoff(int player, const StrategyProfile& p) const {
    return payoff(player, profile_rank(p));
  }

  const std::vector<double>& payoffs() const { return payoffs_; }

 private:
  int n_;
  int m_;
  std::uint64_t profile_count_;  // m^n
  std::vector<double> payoffs_;  // n * m^n, player-major
};

/// Mixed-radix rank of an environment, lexicographic over opponents in
/// increasing player order (first opponent most significant). Bijective with
/// env_unrank; throws std::invalid_argument on out-of-range entries.
std::uint64_t env_rank(const Environment& env, int m);
Environment env_unrank(int player, std::uint64_t rank, int n, int m);

/// Number of environments per player, m^(n-1).
std::uint64_t env_count(int n, int m);

/// The unique payoff-maximizing strategy of `player` against `env`.
/// Ties at the maximum throw DegenerateGameError. `tie_tol` > 0 widens the
/// tie test to |a - b| <= tie_tol for user-supplied (rounded) payoffs; the
/// default 0 compares exactly.
int best_response(const Game& game, int player, const Environment& env,
                  double tie_tol = 0.0);

/// Best responses of every player against every environment, as one flat
/// table indexed by player * m^(n-1) + env_rank.
class BestResponseMap {
 public:
  BestResponseMap(int n, int m, std::vector<int> table);

  int players() const { return n_; }
  int strategies() const { return m_; }
  std::uint64_t env_count() const { return env_count_; }
  std::size_t size() const { return table_.size(); }  // n * m^(n-1)

  int at(int player, std::uint64_t env_rank) const {
    return table_[static_cast<std::size_t>(player) * env_count_ + env_rank];
  }
  const std::vector<int>& table() const { return table_; }

 private:
  int n_;
  int m_;
  std::uint64_t env_count_;
  std::vector<int> table_;
};

/// Tabulates best_response over all n * m^(n-1) (player, environment) pairs.
/// Throws DegenerateGameError for the first offending pair (player-major,
/// environment-rank-minor scan order).
BestResponseMap best_response_map(const Game& game, double tie_tol = 0.0);

/// All pure strategy Nash equilibria, sorted. Checked against the
/// definition directly: s is a PSNE iff no player has a strictly better
/// unilateral deviation. A deviation tying the maximum means the game is
/// degenerate there and throws.
std::vector<StrategyProfile> enumerate_psne(const Game& game,
                                            double tie_tol = 0.0);

/// True iff some (player, environment) has a tied maximum payoff.
bool is_degenerate(const Game& game, double tie_tol = 0.0);

}  // namespace brg

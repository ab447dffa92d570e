#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <utility>

#include "brgames/br_graph.hpp"
#include "brgames/game.hpp"
#include "brgames/numeric.hpp"
#include "brgames/rng.hpp"

namespace brg {

enum class PayoffDist { kNormal, kUniform };

/// Game number `trial` of the stream identified by `seed`: n*m^n payoffs
/// drawn i.i.d. (standard normal, or uniform(0,1) — only the payoff ordering
/// matters for classification). A pure function of its arguments; `attempt`
/// shifts to a fresh payoff block and exists so callers can redraw the rare
/// degenerate game without disturbing other trials.
Game random_game(int n, int m, std::uint64_t seed, std::uint64_t trial,
                 PayoffDist dist = PayoffDist::kNormal, std::uint32_t attempt = 0);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

/// Wilson score interval for a binomial proportion at critical value z.
/// Throws std::invalid_argument on successes > trials, trials = 0, or z <= 0.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z);

/// Monte Carlo classification tallies. counts keys are (type, equilibrium
/// count); the sum of all counts equals trials.
struct EnsembleEstimate {
  int n = 0;
  int m = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double z = 1.96;
  PayoffDist dist = PayoffDist::kNormal;
  std::map<std::pair<GameType, int>, std::uint64_t> counts;
  std::uint64_t degenerate_redraws = 0;

  std::uint64_t count(GameType type, int psne_count) const;
  std::uint64_t type_count(GameType type) const;
  /// Convergent games with exactly k equilibria (type A when k = 1, else B).
  std::uint64_t convergent_count(int k) const;
  double frequency(std::uint64_t successes) const;
  WilsonInterval interval(std::uint64_t successes) const;
};

struct SampleOptions {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double z = 1.96;
  PayoffDist dist = PayoffDist::kNormal;
  unsigned threads = 0;  // 0 = hardware concurrency
  /// Called as progress(completed_trials, total_trials), possibly from
  /// worker threads but never concurrently with itself.
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Draws and classifies opts.trials random games. Degenerate draws are
/// redrawn (tallied in degenerate_redraws), never tie-broken. The result is
/// bit-identical for any thread count because every trial is a pure function
/// of (seed, trial index). Throws std::invalid_argument when trials = 0.
EnsembleEstimate sample_ensemble(int n, int m, const SampleOptions& opts);

/// Exact tallies over every possible best-response configuration: each of
/// the n*m^(n-1) nodes independently picks one of its m successors, all
/// m^(n*m^(n-1)) assignments equally likely. Payoffs never materialize.
struct ExactCensus {
  int n = 0;
  int m = 0;
  BigInt total = 0;
  std::map<std::pair<bool, int>, BigInt> counts;  // (convergent, psne_count)

  const BigInt& count(bool convergent, int psne_count) const;
  BigInt convergent_total() const;
};

struct CensusOptions {
  /// Refuse configuration spaces larger than this (exact comparison).
  std::uint64_t cap = std::uint64_t{1} << 26;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Walks the entire configuration space and classifies every functional
/// graph. Throws SizeGuardError naming m^(n*m^(n-1)) when it exceeds the cap.
ExactCensus enumerate_all_configurations(int n, int m, const CensusOptions& opts = {});

}  // namespace brg

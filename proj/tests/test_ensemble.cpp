#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "brgames/br_graph.hpp"
#include "brgames/closed_form.hpp"
#include "brgames/ensemble.hpp"
#include "brgames/errors.hpp"
#include "brgames/numeric.hpp"
#include "brgames/rng.hpp"

namespace brg_test {

using brg::BigInt;
using brg::CounterRng;
using brg::ExactCensus;
using brg::Game;
using brg::GameType;
using brg::Rational;

TEST_CASE("mix64 avalanches and never collides on small inputs") {
  CHECK(brg::mix64(0) != 0);
  std::set<std::uint64_t> outputs;
  for (std::uint64_t x = 0; x < 4096; ++x) outputs.insert(brg::mix64(x));
  CHECK(outputs.size() == 4096);
}

TEST_CASE("counter generator is a pure function of (seed, stream, index)") {
  CounterRng a(42, 7);
  CounterRng b(42, 7);
  for (std::uint64_t i = 0; i < 100; ++i) {
    CHECK(a.word(i) == b.word(i));
    CHECK(a.uniform01(i) == b.uniform01(i));
  }
  CounterRng other_stream(42, 8);
  CounterRng other_seed(43, 7);
  int same_stream = 0, same_seed = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    same_stream += a.word(i) == other_stream.word(i);
    same_seed += a.word(i) == other_seed.word(i);
  }
  CHECK(same_stream == 0);
  CHECK(same_seed == 0);
  // Random access: evaluation order cannot matter.
  CHECK(a.word(99) == b.word(99));
  CHECK(a.word(0) == b.word(0));
}

TEST_CASE("uniform draws live strictly inside (0,1)") {
  CounterRng rng(1, 0);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    double u = rng.uniform01(i);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal draws have the right first two moments") {
  CounterRng rng(9, 0);
  const std::uint64_t kDraws = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < kDraws; ++i) {
    double x = rng.normal(i);
    sum += x;
    sum_sq += x * x;
  }
  double mean = sum / double(kDraws);
  double var = sum_sq / double(kDraws) - mean * mean;
  CHECK(std::fabs(mean) < 0.02);
  CHECK(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("normal quantile function hits the textbook values") {
  CHECK(brg::inverse_normal_cdf(0.5) == 0.0);
  CHECK(brg::inverse_normal_cdf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(brg::inverse_normal_cdf(0.841344746068543) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(brg::inverse_normal_cdf(0.00134989803163009) == doctest::Approx(-3.0).epsilon(1e-9));
  for (double p : {0.01, 0.1, 0.25, 0.4, 0.6, 0.9, 0.999}) {
    CHECK(brg::inverse_normal_cdf(p) == doctest::Approx(-brg::inverse_normal_cdf(1 - p)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(brg::inverse_normal_cdf(0.0), std::invalid_argument);
  CHECK_THROWS_AS(brg::inverse_normal_cdf(1.0), std::invalid_argument);
  CHECK_THROWS_AS(brg::inverse_normal_cdf(-0.5), std::invalid_argument);
}

TEST_CASE("Wilson intervals behave at the boundaries and the textbook midpoint") {
  brg::WilsonInterval none = brg::wilson_interval(0, 100, 1.96);
  CHECK(none.lo == 0.0);
  CHECK(none.hi > 0.0);
  CHECK(none.hi < 0.1);

  brg::WilsonInterval all = brg::wilson_interval(100, 100, 1.96);
  CHECK(all.hi == 1.0);
  CHECK(all.lo > 0.9);

  brg::WilsonInterval half = brg::wilson_interval(50, 100, 1.96);
  CHECK(half.lo == doctest::Approx(0.40383).epsilon(1e-4));
  CHECK(half.hi == doctest::Approx(0.59617).epsilon(1e-4));

  CHECK_THROWS_AS(brg::wilson_interval(5, 4, 1.96), std::invalid_argument);
  CHECK_THROWS_AS(brg::wilson_interval(0, 0, 1.96), std::invalid_argument);
  CHECK_THROWS_AS(brg::wilson_interval(1, 2, 0.0), std::invalid_argument);
}

TEST_CASE("random games reproduce bit-identically per (seed, trial)") {
  Game a = brg::random_game(3, 3, 77, 5);
  Game b = brg::random_game(3, 3, 77, 5);
  CHECK(a.payoffs() == b.payoffs());
  Game c = brg::random_game(3, 3, 77, 6);
  CHECK(a.payoffs() != c.payoffs());
  Game d = brg::random_game(3, 3, 78, 5);
  CHECK(a.payoffs() != d.payoffs());
  Game redraw = brg::random_game(3, 3, 77, 5, brg::PayoffDist::kNormal, 1);
  CHECK(a.payoffs() != redraw.payoffs());

  Game uni = brg::random_game(2, 2, 3, 0, brg::PayoffDist::kUniform);
  for (double x : uni.payoffs()) {
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("sampling rejects zero trials") {
  brg::SampleOptions opts;
  opts.trials = 0;
  CHECK_THROWS_AS(brg::sample_ensemble(2, 2, opts), std::invalid_argument);
}

TEST_CASE("sampling is bit-identical across thread counts") {
  brg::SampleOptions one;
  one.trials = 20000;
  one.seed = 13;
  one.threads = 1;
  brg::SampleOptions four = one;
  four.threads = 4;
  brg::EnsembleEstimate a = brg::sample_ensemble(2, 3, one);
  brg::EnsembleEstimate b = brg::sample_ensemble(2, 3, four);
  CHECK(a.counts == b.counts);
  CHECK(a.degenerate_redraws == b.degenerate_redraws);
  CHECK(a.trials == b.trials);
}

TEST_CASE("progress callback covers all trials monotonically") {
  brg::SampleOptions opts;
  opts.trials = 1000;
  opts.seed = 1;
  opts.threads = 2;
  std::uint64_t last = 0, calls = 0;
  opts.progress = [&](std::uint64_t done, std::uint64_t total) {
    CHECK(done >= last);
    CHECK(total == 1000);
    last = done;
    ++calls;
  };
  brg::sample_ensemble(2, 2, opts);
  CHECK(calls > 0);
  CHECK(last == 1000);
}

TEST_CASE("estimate accessors partition the trials") {
  brg::SampleOptions opts;
  opts.trials = 50000;
  opts.seed = 7;
  brg::EnsembleEstimate est = brg::sample_ensemble(2, 2, opts);
  CHECK(est.n == 2);
  CHECK(est.m == 2);
  std::uint64_t total = est.type_count(GameType::A) + est.type_count(GameType::B) +
                        est.type_count(GameType::C);
  CHECK(total == est.trials);
  CHECK(est.count(GameType::A, 1) == est.type_count(GameType::A));
  CHECK(est.convergent_count(1) == est.type_count(GameType::A));
  CHECK(est.convergent_count(2) == est.count(GameType::B, 2));
  CHECK(est.frequency(est.trials) == 1.0);
  CHECK(est.frequency(0) == 0.0);
}

TEST_CASE("2x2 sampling matches the exact 3/4 unique-convergence rate") {
  brg::SampleOptions opts;
  opts.trials = 1000000;
  opts.seed = 17;
  brg::EnsembleEstimate est = brg::sample_ensemble(2, 2, opts);
  double p_hat = est.frequency(est.type_count(GameType::A));
  CHECK(std::fabs(p_hat - 0.75) < 0.005);
  double c_hat = est.frequency(est.type_count(GameType::C));
  CHECK(std::fabs(c_hat - 0.125) < 0.005);
  CHECK(est.degenerate_redraws == 0);
}

TEST_CASE("3-player 2-strategy sampling brackets the exact frequency") {
  brg::SampleOptions opts;
  opts.trials = 100000;
  opts.seed = 7;
  opts.z = 3.0;
  brg::EnsembleEstimate est = brg::sample_ensemble(3, 2, opts);
  brg::WilsonInterval window = est.interval(est.type_count(GameType::A));
  double exact = 31.0 / 64.0;
  CHECK(window.lo <= exact);
  CHECK(exact <= window.hi);
}

TEST_CASE("uniform payoffs give the same frequencies as normal payoffs") {
  brg::SampleOptions normal;
  normal.trials = 200000;
  normal.seed = 21;
  brg::SampleOptions uniform = normal;
  uniform.dist = brg::PayoffDist::kUniform;
  brg::EnsembleEstimate a = brg::sample_ensemble(2, 2, normal);
  brg::EnsembleEstimate b = brg::sample_ensemble(2, 2, uniform);
  double pa = a.frequency(a.type_count(GameType::A));
  double pb = b.frequency(b.type_count(GameType::A));
  CHECK(std::fabs(pa - pb) < 0.01);
}

namespace {

// Independent exhaustive tally for tiny sizes: iterate every best-response
// table directly as base-m digits, walk each starting node to its cycle, and
// classify without any shared machinery beyond the node numbering.
std::map<std::pair<bool, int>, std::uint64_t> census_by_hand(int n, int m) {
  const int envs_per_player = int(brg::env_count(n, m));
  const int nodes = n * envs_per_player;
  std::uint64_t configs = 1;
  for (int i = 0; i < nodes; ++i) configs *= std::uint64_t(m);

  brg::FullGraph full = brg::build_full_graph(n, m);
  std::map<std::pair<bool, int>, std::uint64_t> tally;
  std::vector<int> digit(nodes);
  for (std::uint64_t cfg = 0; cfg < configs; ++cfg) {
    std::uint64_t x = cfg;
    for (int i = 0; i < nodes; ++i) {
      digit[i] = int(x % std::uint64_t(m));
      x /= std::uint64_t(m);
    }
    std::vector<brg::NodeId> succ(nodes);
    for (int v = 0; v < nodes; ++v) succ[v] = full.adjacency[v][digit[v]];

    // Cycle lengths by brute-force walking (2 * nodes steps reaches the cycle).
    std::set<brg::NodeId> on_cycles;
    bool convergent = true;
    int psne = 0;
    for (int start = 0; start < nodes; ++start) {
      brg::NodeId cur = brg::NodeId(start);
      for (int step = 0; step < 2 * nodes; ++step) cur = succ[cur];
      // cur now sits on a cycle; measure its length once per cycle.
      if (on_cycles.count(cur)) continue;
      int len = 1;
      for (brg::NodeId w = succ[cur]; w != cur; w = succ[w]) ++len;
      brg::NodeId w = cur;
      do {
        on_cycles.insert(w);
        w = succ[w];
      } while (w != cur);
      if (len == n) {
        ++psne;
      } else {
        convergent = false;
      }
    }
    tally[{convergent, psne}] += 1;
  }
  return tally;
}

}  // namespace

TEST_CASE("exact census of (2,2) matches its 16 configurations") {
  ExactCensus census = brg::enumerate_all_configurations(2, 2);
  CHECK(census.total == 16);
  CHECK(census.count(true, 1) == 12);
  CHECK(census.count(true, 2) == 2);
  CHECK(census.count(false, 0) == 2);
  CHECK(census.count(true, 3) == 0);
  CHECK(census.convergent_total() == 14);

  auto by_hand = census_by_hand(2, 2);
  for (const auto& [key, value] : by_hand) {
    CHECK(census.count(key.first, key.second) == value);
  }
}

TEST_CASE("exact census of (2,3) matches an independent enumeration") {
  ExactCensus census = brg::enumerate_all_configurations(2, 3);
  CHECK(census.total == 729);
  CHECK(census.count(true, 1) == 405);
  CHECK(census.count(true, 2) == 144);
  CHECK(census.count(true, 3) == 6);
  CHECK(census.total - census.convergent_total() == 174);

  auto by_hand = census_by_hand(2, 3);
  BigInt hand_total = 0;
  for (const auto& [key, value] : by_hand) {
    CHECK(census.count(key.first, key.second) == value);
    hand_total += value;
  }
  CHECK(hand_total == census.total);
}

TEST_CASE("exact census of (3,2) reproduces the pinned counts") {
  ExactCensus census = brg::enumerate_all_configurations(3, 2);
  CHECK(census.total == 4096);
  CHECK(census.count(true, 1) == 1984);
  CHECK(census.count(true, 2) == 828);
  CHECK(census.count(true, 3) == 56);
  CHECK(census.count(true, 4) == 2);
  CHECK(census.convergent_total() == 2870);
  CHECK(census.total - census.convergent_total() == 1226);

  // Non-convergent tallies can carry any equilibrium count less than the
  // maximum; all 1226 live in the false bucket.
  BigInt non_convergent = 0;
  for (const auto& [key, value] : census.counts) {
    if (!key.first) non_convergent += value;
  }
  CHECK(non_convergent == 1226);
}

TEST_CASE("exact census of (2,4) reproduces the pinned counts") {
  ExactCensus census = brg::enumerate_all_configurations(2, 4);
  CHECK(census.total == 65536);
  CHECK(census.count(true, 1) == 28672);
  CHECK(census.count(true, 2) == 13824);
  CHECK(census.count(true, 3) == 1440);
  CHECK(census.count(true, 4) == 24);
  CHECK(census.total - census.convergent_total() == 21576);
}

TEST_CASE("census frequencies equal the closed forms exactly") {
  for (auto [n, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}}) {
    ExactCensus census = brg::enumerate_all_configurations(n, m);
    CHECK(Rational(census.count(true, 1), census.total) == brg::p1(n, m));
    if (n == 2) {
      for (int k = 1; k <= m; ++k) {
        CHECK(Rational(census.count(true, k), census.total) == brg::p2_k(m, k));
      }
    }
  }
}

TEST_CASE("census structural invariants") {
  ExactCensus census = brg::enumerate_all_configurations(3, 2);
  BigInt psne_at_least_one = 0;
  for (const auto& [key, value] : census.counts) {
    auto [convergent, psne] = key;
    if (convergent) CHECK(psne >= 1);
    if (psne == 0) CHECK_FALSE(convergent);
    if (psne >= 1) psne_at_least_one += value;
  }
  // Some non-convergent configurations still carry an equilibrium (the
  // fixture game is one), so strictly more than the unique-convergent count.
  CHECK(psne_at_least_one > 1984);
}

TEST_CASE("census refuses spaces beyond the cap and names the size") {
  CHECK_THROWS_AS(brg::enumerate_all_configurations(3, 3), brg::SizeGuardError);
  try {
    brg::enumerate_all_configurations(3, 3);  // 3^27 configurations
  } catch (const brg::SizeGuardError& e) {
    CHECK(e.size() == "7625597484987");
  }
  brg::CensusOptions tiny;
  tiny.cap = 10;
  CHECK_THROWS_AS(brg::enumerate_all_configurations(2, 2, tiny), brg::SizeGuardError);
}

TEST_CASE("census is identical across thread counts") {
  brg::CensusOptions one;
  one.threads = 1;
  brg::CensusOptions four;
  four.threads = 4;
  ExactCensus a = brg::enumerate_all_configurations(3, 2, one);
  ExactCensus b = brg::enumerate_all_configurations(3, 2, four);
  CHECK(a.counts == b.counts);
  CHECK(a.total == b.total);
}

}  // namespace brg_test

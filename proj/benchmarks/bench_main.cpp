// Microbenchmarks for the hot paths: classification, exhaustive census,
// exact determinants, and ensemble sampling.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "brgames/br_graph.hpp"
#include "brgames/closed_form.hpp"
#include "brgames/ensemble.hpp"
#include "brgames/game.hpp"
#include "brgames/spectral.hpp"

namespace {

void BM_Classify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  std::vector<brg::Game> games;
  for (std::uint64_t trial = 0; trial < 64; ++trial) {
    games.push_back(brg::random_game(n, m, 1, trial));
  }
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brg::classify(games[i++ % games.size()]));
  }
}
BENCHMARK(BM_Classify)->Args({2, 2})->Args({3, 3})->Args({4, 2})->Args({2, 10});

void BM_BestResponseMap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const brg::Game game = brg::random_game(n, m, 2, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brg::best_response_map(game));
  }
}
BENCHMARK(BM_BestResponseMap)->Args({3, 3})->Args({4, 3})->Args({2, 30});

void BM_Census(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  brg::CensusOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brg::enumerate_all_configurations(n, m, opts));
  }
}
BENCHMARK(BM_Census)->Args({2, 2})->Args({2, 3})->Args({3, 2})->Args({2, 4})
    ->Unit(benchmark::kMillisecond);

void BM_DetExact(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  // Deterministic integer matrix with entries spread over [-4, 4].
  brg::IntMatrix mat(static_cast<std::size_t>(side));
  std::uint64_t x = 0x9e3779b97f4a7c15ull;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      x = x * 6364136223846793005ull + 1442695040888963407ull;
      mat.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
          static_cast<int>((x >> 33) % 9) - 4;
    }
  }
  for (auto _ : state) {
    brg::IntMatrix copy = mat;
    benchmark::DoNotOptimize(brg::det_exact(std::move(copy)));
  }
}
BENCHMARK(BM_DetExact)->Arg(8)->Arg(16)->Arg(32)->Arg(63);

void BM_SpanningTrees(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  const brg::FullGraph full = brg::build_full_graph(n, m);
  const brg::CondensedGraph cond =
      brg::condense_psne(full, brg::StrategyProfile{std::vector<int>(n, 0)});
  for (auto _ : state) {
    benchmark::DoNotOptimize(brg::spanning_tree_count(cond));
  }
}
BENCHMARK(BM_SpanningTrees)->Args({3, 2})->Args({3, 3})->Args({4, 2})->Args({2, 10});

void BM_Sample(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  brg::SampleOptions opts;
  opts.trials = 10000;
  opts.seed = 7;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brg::sample_ensemble(n, m, opts));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 10000);
}
BENCHMARK(BM_Sample)->Args({2, 2})->Args({3, 2})->Args({3, 3})
    ->Unit(benchmark::kMillisecond);

void BM_ClosedForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brg::p1(n, m));
  }
}
BENCHMARK(BM_ClosedForm)->Args({2, 100})->Args({5, 50})->Args({12, 2});

}  // namespace

BENCHMARK_MAIN();

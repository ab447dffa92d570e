#include "brgames/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "brgames/errors.hpp"

namespace brg {

namespace {

// Split [0, total) into `parts` contiguous near-equal ranges.
std::vector<std::pair<std::uint64_t, std::uint64_t>> partition(std::uint64_t total,
                                                               unsigned parts) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;
  std::uint64_t lo = 0;
  for (unsigned i = 0; i < parts; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    ranges.emplace_back(lo, lo + len);
    lo += len;
  }
  return ranges;
}

unsigned resolve_threads(unsigned requested, std::uint64_t work_items) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (work_items < t) t = static_cast<unsigned>(std::max<std::uint64_t>(work_items, 1));
  return t;
}

// Rate-limited, serialized progress relay shared by all workers.
class ProgressSink {
 public:
  ProgressSink(std::function<void(std::uint64_t, std::uint64_t)> hook, std::uint64_t total)
      : hook_(std::move(hook)), total_(total) {}

  void add(std::uint64_t completed_delta) {
    if (!hook_) return;
    std::lock_guard<std::mutex> lock(mutex_);
    completed_ += completed_delta;
    hook_(completed_, total_);
  }

 private:
  std::function<void(std::uint64_t, std::uint64_t)> hook_;
  std::uint64_t total_;
  std::uint64_t completed_ = 0;
  std::mutex mutex_;
};

constexpr std::uint64_t kProgressBatch = 1 << 16;

}  // namespace

Game random_game(int n, int m, std::uint64_t seed, std::uint64_t trial, PayoffDist dist,
                 std::uint32_t attempt) {
  const std::uint64_t payoff_count = static_cast<std::uint64_t>(n) * env_count(n, m) *
                                     static_cast<std::uint64_t>(m);  // n * m^n
  const CounterRng rng(seed, trial);
  const std::uint64_t base = static_cast<std::uint64_t>(attempt) * payoff_count;
  std::vector<double> payoffs(payoff_count);
  for (std::uint64_t i = 0; i < payoff_count; ++i) {
    payoffs[i] = dist == PayoffDist::kNormal ? rng.normal(base + i) : rng.uniform01(base + i);
  }
  return Game(n, m, std::move(payoffs));
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson interval needs at least one trial");
  if (successes > trials) throw std::invalid_argument("successes exceed trials");
  if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
  const double nn = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  WilsonInterval w;
  w.lo = std::max(0.0, center - half);
  w.hi = std::min(1.0, center + half);
  // At the boundaries the interval endpoints are exactly 0 and 1; rounding in
  // the general expression can land one ulp inside, so pin them.
  if (successes == 0) w.lo = 0.0;
  if (successes == trials) w.hi = 1.0;
  return w;
}

std::uint64_t EnsembleEstimate::count(GameType type, int psne_count) const {
  const auto it = counts.find({type, psne_count});
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t EnsembleEstimate::type_count(GameType type) const {
  std::uint64_t total = 0;
  for (const auto& [key, c] : counts) {
    if (key.first == type) total += c;
  }
  return total;
}

std::uint64_t EnsembleEstimate::convergent_count(int k) const {
  return count(GameType::A, k) + count(GameType::B, k);
}

double EnsembleEstimate::frequency(std::uint64_t successes) const {
  return static_cast<double>(successes) / static_cast<double>(trials);
}

WilsonInterval EnsembleEstimate::interval(std::uint64_t successes) const {
  return wilson_interval(successes, trials, z);
}

EnsembleEstimate sample_ensemble(int n, int m, const SampleOptions& opts) {
  if (opts.trials == 0) throw std::invalid_argument("need at least one trial");
  env_count(n, m);  // validate n, m up front

  struct WorkerTally {
    std::map<std::pair<GameType, int>, std::uint64_t> counts;
    std::uint64_t redraws = 0;
  };

  ProgressSink progress(opts.progress, opts.trials);
  const unsigned threads = resolve_threads(opts.threads, opts.trials);
  const auto ranges = partition(opts.trials, threads);
  std::vector<WorkerTally> tallies(threads);

  const auto worker = [&](unsigned w) {
    WorkerTally& tally = tallies[w];
    std::uint64_t since_report = 0;
    for (std::uint64_t trial = ranges[w].first; trial < ranges[w].second; ++trial) {
      for (std::uint32_t attempt = 0;; ++attempt) {
        const Game game = random_game(n, m, opts.seed, trial, opts.dist, attempt);
        try {
          const Classification cls = classify(best_response_map(game));
          ++tally.counts[{cls.game_type, cls.psne_count}];
          break;
        } catch (const DegenerateGameError&) {
          ++tally.redraws;  // probability-zero event: redraw a fresh payoff block
        }
      }
      if (++since_report == kProgressBatch) {
        progress.add(since_report);
        since_report = 0;
      }
    }
    if (since_report != 0) progress.add(since_report);
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  EnsembleEstimate est;
  est.n = n;
  est.m = m;
  est.trials = opts.trials;
  est.seed = opts.seed;
  est.z = opts.z;
  est.dist = opts.dist;
  for (const WorkerTally& tally : tallies) {
    est.degenerate_redraws += tally.redraws;
    for (const auto& [key, c] : tally.counts) est.counts[key] += c;
  }
  return est;
}

const BigInt& ExactCensus::count(bool convergent, int psne_count) const {
  static const BigInt zero = 0;
  const auto it = counts.find({convergent, psne_count});
  return it == counts.end() ? zero : it->second;
}

BigInt ExactCensus::convergent_total() const {
  BigInt total = 0;
  for (const auto& [key, c] : counts) {
    if (key.first) total += c;
  }
  return total;
}

ExactCensus enumerate_all_configurations(int n, int m, const CensusOptions& opts) {
  const std::uint64_t node_count = static_cast<std::uint64_t>(n) * env_count(n, m);
  const BigInt space = int_pow(BigInt(m), static_cast<unsigned>(node_count));
  if (space > opts.cap) {
    throw SizeGuardError("configuration count m^(n*m^(n-1))", space.str());
  }
  const std::uint64_t total = space.convert_to<std::uint64_t>();
  const FullGraph full = build_full_graph(n, m, node_count);
  const std::size_t K = static_cast<std::size_t>(node_count);
  const int max_psne = static_cast<int>(node_count) / n;

  // Flat per-worker tally indexed by 2 * psne_count + convergent.
  const std::size_t tally_size = static_cast<std::size_t>(max_psne + 1) * 2;

  ProgressSink progress(opts.progress, total);
  const unsigned threads = resolve_threads(opts.threads, total);
  const auto ranges = partition(total, threads);
  std::vector<std::vector<std::uint64_t>> tallies(threads,
                                                  std::vector<std::uint64_t>(tally_size, 0));

  const auto worker = [&](unsigned w) {
    std::vector<std::uint64_t>& tally = tallies[w];
    const auto [lo, hi] = ranges[w];
    if (lo == hi) return;

    // Configuration index as a little-endian base-m odometer: digit j picks
    // the successor of node j.
    std::vector<int> digit(K, 0);
    std::vector<NodeId> succ(K);
    {
      std::uint64_t rest = lo;
      for (std::size_t j = 0; j < K; ++j) {
        digit[j] = static_cast<int>(rest % static_cast<std::uint64_t>(m));
        rest /= static_cast<std::uint64_t>(m);
        succ[j] = full.adjacency[j][static_cast<std::size_t>(digit[j])];
      }
    }

    std::vector<std::uint64_t> visited(K, 0);
    std::vector<std::uint32_t> tag(K, 0);
    std::vector<std::uint32_t> pos(K, 0);
    std::uint64_t epoch = 0;
    std::uint64_t since_report = 0;

    for (std::uint64_t config = lo; config < hi; ++config) {
      ++epoch;
      int psne = 0;
      bool convergent = true;
      for (std::uint32_t start = 0; start < K; ++start) {
        if (visited[start] == epoch) continue;
        NodeId u = start;
        std::uint32_t steps = 0;
        while (visited[u] != epoch) {
          visited[u] = epoch;
          tag[u] = start;
          pos[u] = steps++;
          u = succ[u];
        }
        if (tag[u] == start) {  // this walk closed a brand-new cycle
          const std::uint32_t len = steps - pos[u];
          if (len == static_cast<std::uint32_t>(n)) {
            ++psne;
          } else {
            convergent = false;
          }
        }
      }
      ++tally[static_cast<std::size_t>(psne) * 2 + (convergent ? 1 : 0)];

      // Advance the odometer, refreshing successors of the digits that moved.
      for (std::size_t j = 0; j < K; ++j) {
        if (++digit[j] < m) {
          succ[j] = full.adjacency[j][static_cast<std::size_t>(digit[j])];
          break;
        }
        digit[j] = 0;
        succ[j] = full.adjacency[j][0];
      }

      if (++since_report == kProgressBatch) {
        progress.add(since_report);
        since_report = 0;
      }
    }
    if (since_report != 0) progress.add(since_report);
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }

  ExactCensus census;
  census.n = n;
  census.m = m;
  census.total = space;
  for (const auto& tally : tallies) {
    for (std::size_t idx = 0; idx < tally_size; ++idx) {
      if (tally[idx] == 0) continue;
      const bool convergent = (idx % 2) == 1;
      const int psne = static_cast<int>(idx / 2);
      census.counts[{convergent, psne}] += tally[idx];
    }
  }
  return census;
}

}  // namespace brg

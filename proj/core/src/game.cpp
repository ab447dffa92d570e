#include "brgames/game.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace brg {

namespace {

// m^e with overflow detection; a payoff tensor that large cannot exist anyway.
std::uint64_t checked_pow(int m, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(m)) {
      throw std::invalid_argument("game dimensions overflow: m^" + std::to_string(e));
    }
    r *= static_cast<std::uint64_t>(m);
  }
  return r;
}

void check_dims(int n, int m) {
  if (n < 2) throw std::invalid_argument("need at least 2 players, got " + std::to_string(n));
  if (m < 2) throw std::invalid_argument("need at least 2 strategies, got " + std::to_string(m));
}

void check_env(const Environment& env, int n, int m) {
  if (env.player < 0 || env.player >= n) {
    throw std::invalid_argument("environment player " + std::to_string(env.player) +
                                " out of range [0," + std::to_string(n) + ")");
  }
  if (static_cast<int>(env.others.size()) != n - 1) {
    throw std::invalid_argument("environment must list " + std::to_string(n - 1) +
                                " opponent strategies, got " + std::to_string(env.others.size()));
  }
  for (int s : env.others) {
    if (s < 0 || s >= m) {
      throw std::invalid_argument("opponent strategy " + std::to_string(s) +
                                  " out of range [0," + std::to_string(m) + ")");
    }
  }
}

// Profile rank with `player`'s own digit zeroed, and the positional weight of
// that digit. rank(profile with own strategy b) = base + b * stride.
struct EnvSlot {
  std::uint64_t base;
  std::uint64_t stride;
};

EnvSlot env_slot(int player, const std::vector<int>& others, int n, int m) {
  std::uint64_t base = 0;
  std::uint64_t stride = 1;
  int t = static_cast<int>(others.size()) - 1;  // walk opponents least-significant first
  std::uint64_t weight = 1;
  for (int j = n - 1; j >= 0; --j) {
    if (j == player) {
      stride = weight;
    } else {
      base += static_cast<std::uint64_t>(others[t--]) * weight;
    }
    weight *= static_cast<std::uint64_t>(m);
  }
  return {base, stride};
}

// Unique payoff-maximizing strategy, or -1 when the maximum is attained more
// than once (within tie_tol).
int argmax_strategy(const Game& game, int player, EnvSlot slot, double tie_tol) {
  const int m = game.strategies();
  double best = -std::numeric_limits<double>::infinity();
  int best_b = 0;
  for (int b = 0; b < m; ++b) {
    const double v = game.payoff(player, slot.base + static_cast<std::uint64_t>(b) * slot.stride);
    if (v > best) {
      best = v;
      best_b = b;
    }
  }
  int hits = 0;
  for (int b = 0; b < m; ++b) {
    const double v = game.payoff(player, slot.base + static_cast<std::uint64_t>(b) * slot.stride);
    if (best - v <= tie_tol) ++hits;
  }
  return hits > 1 ? -1 : best_b;
}

}  // namespace

Game::Game(int n, int m, std::vector<double> payoffs)
    : n_(n), m_(m), profile_count_(0), payoffs_(std::move(payoffs)) {
  check_dims(n, m);
  profile_count_ = checked_pow(m, n);
  const std::uint64_t want = static_cast<std::uint64_t>(n) * profile_count_;
  if (payoffs_.size() != want) {
    throw std::invalid_argument("expected " + std::to_string(want) + " payoffs (n*m^n), got " +
                                std::to_string(payoffs_.size()));
  }
  for (double v : payoffs_) {
    if (!std::isfinite(v)) throw std::invalid_argument("payoffs must be finite");
  }
}

std::uint64_t Game::profile_rank(const StrategyProfile& p) const {
  if (static_cast<int>(p.s.size()) != n_) {
    throw std::invalid_argument("profile must list " + std::to_string(n_) + " strategies");
  }
  std::uint64_t rank = 0;
  for (int j = 0; j < n_; ++j) {
    if (p.s[j] < 0 || p.s[j] >= m_) {
      throw std::invalid_argument("strategy " + std::to_string(p.s[j]) + " out of range [0," +
                                  std::to_string(m_) + ")");
    }
    rank = rank * static_cast<std::uint64_t>(m_) + static_cast<std::uint64_t>(p.s[j]);
  }
  return rank;
}

StrategyProfile Game::profile_unrank(std::uint64_t rank) const {
  if (rank >= profile_count_) {
    throw std::invalid_argument("profile rank " + std::to_string(rank) + " out of range");
  }
  StrategyProfile p;
  p.s.assign(static_cast<std::size_t>(n_), 0);
  for (int j = n_ - 1; j >= 0; --j) {
    p.s[static_cast<std::size_t>(j)] = static_cast<int>(rank % static_cast<std::uint64_t>(m_));
    rank /= static_cast<std::uint64_t>(m_);
  }
  return p;
}

std::uint64_t env_rank(const Environment& env, int m) {
  const int n = static_cast<int>(env.others.size()) + 1;
  check_dims(n, m);
  check_env(env, n, m);
  std::uint64_t rank = 0;
  for (int s : env.others) {
    rank = rank * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(s);
  }
  return rank;
}

Environment env_unrank(int player, std::uint64_t rank, int n, int m) {
  check_dims(n, m);
  if (player < 0 || player >= n) {
    throw std::invalid_argument("player " + std::to_string(player) + " out of range [0," +
                                std::to_string(n) + ")");
  }
  if (rank >= env_count(n, m)) {
    throw std::invalid_argument("environment rank " + std::to_string(rank) + " out of range");
  }
  Environment env;
  env.player = player;
  env.others.assign(static_cast<std::size_t>(n - 1), 0);
  for (int t = n - 2; t >= 0; --t) {
    env.others[static_cast<std::size_t>(t)] = static_cast<int>(rank % static_cast<std::uint64_t>(m));
    rank /= static_cast<std::uint64_t>(m);
  }
  return env;
}

std::uint64_t env_count(int n, int m) {
  check_dims(n, m);
  return checked_pow(m, n - 1);
}

int best_response(const Game& game, int player, const Environment& env, double tie_tol) {
  if (env.player != player) {
    throw std::invalid_argument("environment belongs to player " + std::to_string(env.player) +
                                ", queried for player " + std::to_string(player));
  }
  check_env(env, game.players(), game.strategies());
  const EnvSlot slot = env_slot(player, env.others, game.players(), game.strategies());
  const int b = argmax_strategy(game, player, slot, tie_tol);
  if (b < 0) throw DegenerateGameError(player, env_rank(env, game.strategies()));
  return b;
}

BestResponseMap::BestResponseMap(int n, int m, std::vector<int> table)
    : n_(n), m_(m), env_count_(brg::env_count(n, m)), table_(std::move(table)) {
  if (table_.size() != static_cast<std::size_t>(n) * env_count_) {
    throw std::invalid_argument("best-response table needs n*m^(n-1) entries");
  }
}

BestResponseMap best_response_map(const Game& game, double tie_tol) {
  const int n = game.players();
  const int m = game.strategies();
  const std::uint64_t envs = env_count(n, m);
  std::vector<int> table(static_cast<std::size_t>(n) * envs);
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t e = 0; e < envs; ++e) {
      const Environment env = env_unrank(i, e, n, m);
      const EnvSlot slot = env_slot(i, env.others, n, m);
      const int b = argmax_strategy(game, i, slot, tie_tol);
      if (b < 0) throw DegenerateGameError(i, e);
      table[static_cast<std::size_t>(i) * envs + e] = b;
    }
  }
  return BestResponseMap(n, m, std::move(table));
}

std::vector<StrategyProfile> enumerate_psne(const Game& game, double tie_tol) {
  const int n = game.players();
  const int m = game.strategies();
  std::vector<StrategyProfile> found;
  for (std::uint64_t r = 0; r < game.profile_count(); ++r) {
    const StrategyProfile p = game.profile_unrank(r);
    bool stable = true;
    std::uint64_t stride = 1;
    for (int i = n - 1; i >= 0; --i) {
      const std::uint64_t base = r - static_cast<std::uint64_t>(p.s[static_cast<std::size_t>(i)]) * stride;
      const int b = argmax_strategy(game, i, {base, stride}, tie_tol);
      if (b < 0) {
        Environment env;
        env.player = i;
        env.others.reserve(static_cast<std::size_t>(n - 1));
        for (int j = 0; j < n; ++j) {
          if (j != i) env.others.push_back(p.s[static_cast<std::size_t>(j)]);
        }
        throw DegenerateGameError(i, env_rank(env, m));
      }
      if (b != p.s[static_cast<std::size_t>(i)]) {
        stable = false;
        break;
      }
      stride *= static_cast<std::uint64_t>(m);
    }
    if (stable) found.push_back(p);
  }
  return found;
}

bool is_degenerate(const Game& game, double tie_tol) {
  const int n = game.players();
  const int m = game.strategies();
  const std::uint64_t envs = env_count(n, m);
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t e = 0; e < envs; ++e) {
      const Environment env = env_unrank(i, e, n, m);
      const EnvSlot slot = env_slot(i, env.others, n, m);
      if (argmax_strategy(game, i, slot, tie_tol) < 0) return true;
    }
  }
  return false;
}

}  // namespace brg

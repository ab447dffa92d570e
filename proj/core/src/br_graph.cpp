#include "brgames/br_graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "brgames/errors.hpp"

namespace brg {

namespace {

// Turn order -> "who moves after player i" table. Empty order = identity.
std::vector<int> next_player_table(int n, const std::vector<int>& order) {
  std::vector<int> next(static_cast<std::size_t>(n));
  if (order.empty()) {
    for (int i = 0; i < n; ++i) next[static_cast<std::size_t>(i)] = (i + 1) % n;
    return next;
  }
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("turn order must list all " + std::to_string(n) + " players");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : order) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("turn order is not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  for (int t = 0; t < n; ++t) {
    next[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] =
        order[static_cast<std::size_t>((t + 1) % n)];
  }
  return next;
}

// Rank of the environment of `target` read out of a full strategy profile.
std::uint64_t env_rank_from_profile(const std::vector<int>& profile, int target, int m) {
  std::uint64_t rank = 0;
  for (int j = 0; j < static_cast<int>(profile.size()); ++j) {
    if (j == target) continue;
    rank = rank * static_cast<std::uint64_t>(m) +
           static_cast<std::uint64_t>(profile[static_cast<std::size_t>(j)]);
  }
  return rank;
}

// profile = env.others with `strategy` spliced back in at position `player`.
std::vector<int> splice_profile(const Environment& env, int strategy) {
  std::vector<int> profile(env.others.size() + 1);
  for (int j = 0; j < static_cast<int>(profile.size()); ++j) {
    if (j < env.player) {
      profile[static_cast<std::size_t>(j)] = env.others[static_cast<std::size_t>(j)];
    } else if (j == env.player) {
      profile[static_cast<std::size_t>(j)] = strategy;
    } else {
      profile[static_cast<std::size_t>(j)] = env.others[static_cast<std::size_t>(j - 1)];
    }
  }
  return profile;
}

}  // namespace

NodeId node_id(int player, std::uint64_t rank, int n, int m) {
  const std::uint64_t envs = env_count(n, m);
  if (player < 0 || player >= n || rank >= envs) {
    throw std::invalid_argument("node (player " + std::to_string(player) + ", env " +
                                std::to_string(rank) + ") out of range");
  }
  return static_cast<NodeId>(static_cast<std::uint64_t>(player) * envs + rank);
}

int node_player(NodeId node, int n, int m) {
  return static_cast<int>(node / env_count(n, m));
}

std::uint64_t node_env(NodeId node, int n, int m) {
  return node % env_count(n, m);
}

FunctionalGraph build_functional_graph(const BestResponseMap& brm, const std::vector<int>& order) {
  const int n = brm.players();
  const int m = brm.strategies();
  const std::vector<int> next = next_player_table(n, order);
  const std::uint64_t envs = brm.env_count();

  FunctionalGraph fg;
  fg.n = n;
  fg.m = m;
  fg.successor.resize(static_cast<std::size_t>(n) * envs);
  for (int i = 0; i < n; ++i) {
    const int j = next[static_cast<std::size_t>(i)];
    for (std::uint64_t e = 0; e < envs; ++e) {
      const Environment env = env_unrank(i, e, n, m);
      const std::vector<int> profile = splice_profile(env, brm.at(i, e));
      fg.successor[static_cast<std::size_t>(i) * envs + e] =
          node_id(j, env_rank_from_profile(profile, j, m), n, m);
    }
  }
  return fg;
}

FullGraph build_full_graph(int n, int m, std::uint64_t node_guard) {
  const std::uint64_t envs = env_count(n, m);
  const std::uint64_t nodes = static_cast<std::uint64_t>(n) * envs;
  if (nodes > node_guard) {
    throw SizeGuardError("full graph node count n*m^(n-1)", std::to_string(nodes));
  }

  FullGraph full;
  full.n = n;
  full.m = m;
  full.adjacency.resize(nodes);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    for (std::uint64_t e = 0; e < envs; ++e) {
      const Environment env = env_unrank(i, e, n, m);
      auto& row = full.adjacency[static_cast<std::size_t>(i) * envs + e];
      row.reserve(static_cast<std::size_t>(m));
      for (int c = 0; c < m; ++c) {
        const std::vector<int> profile = splice_profile(env, c);
        row.push_back(node_id(j, env_rank_from_profile(profile, j, m), n, m));
      }
    }
  }
  return full;
}

std::uint64_t CondensedGraph::sink_in_degree() const {
  std::uint64_t deg = 0;
  for (const auto& row : adjacency) {
    deg += static_cast<std::uint64_t>(std::count(row.begin(), row.end(), kSink));
  }
  return deg;
}

CondensedGraph condense_psne(const FullGraph& full, const StrategyProfile& psne) {
  const int n = full.n;
  const int m = full.m;
  if (static_cast<int>(psne.s.size()) != n) {
    throw std::invalid_argument("profile must list " + std::to_string(n) + " strategies");
  }
  for (int s : psne.s) {
    if (s < 0 || s >= m) {
      throw std::invalid_argument("strategy " + std::to_string(s) + " out of range [0," +
                                  std::to_string(m) + ")");
    }
  }

  const std::uint64_t nodes = full.node_count();
  // Old node id -> condensed id; the n nodes of the profile all become the sink.
  std::vector<NodeId> remap(nodes, CondensedGraph::kSink);
  std::vector<bool> merged(nodes, false);
  for (int i = 0; i < n; ++i) {
    merged[node_id(i, env_rank_from_profile(psne.s, i, m), n, m)] = true;
  }
  NodeId fresh = 1;
  for (std::uint64_t v = 0; v < nodes; ++v) {
    if (!merged[v]) remap[v] = fresh++;
  }

  CondensedGraph cg;
  cg.n = n;
  cg.m = m;
  cg.adjacency.resize(nodes - static_cast<std::uint64_t>(n - 1));
  for (std::uint64_t v = 0; v < nodes; ++v) {
    if (merged[v]) continue;  // sink keeps no outgoing edges
    auto& row = cg.adjacency[remap[v]];
    row.reserve(full.adjacency[v].size());
    for (NodeId t : full.adjacency[v]) row.push_back(remap[t]);
  }
  return cg;
}

std::vector<Cycle> find_cycles(const FunctionalGraph& fg) {
  const std::uint64_t nodes = fg.node_count();
  enum : unsigned char { kWhite, kGray, kBlack };
  std::vector<unsigned char> state(nodes, kWhite);
  std::vector<std::uint32_t> pos_in_path(nodes, 0);
  std::vector<NodeId> path;
  std::vector<Cycle> cycles;

  for (std::uint64_t start = 0; start < nodes; ++start) {
    if (state[start] != kWhite) continue;
    path.clear();
    NodeId u = static_cast<NodeId>(start);
    while (state[u] == kWhite) {
      state[u] = kGray;
      pos_in_path[u] = static_cast<std::uint32_t>(path.size());
      path.push_back(u);
      u = fg.successor[u];
    }
    if (state[u] == kGray) {  // walked into our own tail: the suffix is a new cycle
      Cycle cycle;
      cycle.nodes.assign(path.begin() + pos_in_path[u], path.end());
      const auto min_it = std::min_element(cycle.nodes.begin(), cycle.nodes.end());
      std::rotate(cycle.nodes.begin(), min_it, cycle.nodes.end());
      cycles.push_back(std::move(cycle));
    }
    for (NodeId v : path) state[v] = kBlack;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const Cycle& a, const Cycle& b) { return a.nodes.front() < b.nodes.front(); });
  return cycles;
}

std::string to_string(GameType type) {
  switch (type) {
    case GameType::A: return "A";
    case GameType::B: return "B";
    case GameType::C: return "C";
  }
  return "?";
}

Classification classify(const BestResponseMap& brm, const std::vector<int>& order) {
  Classification result;
  result.cycles = find_cycles(build_functional_graph(brm, order));
  const std::size_t n = static_cast<std::size_t>(brm.players());
  result.convergent = true;
  for (const Cycle& c : result.cycles) {
    if (c.length() == n) {
      ++result.psne_count;
    } else {
      result.convergent = false;
    }
  }
  result.game_type = !result.convergent ? GameType::C
                     : result.psne_count == 1 ? GameType::A
                                              : GameType::B;
  return result;
}

Classification classify(const Game& game, const std::vector<int>& order) {
  return classify(best_response_map(game), order);
}

Trajectory trajectory(const FunctionalGraph& fg, NodeId start) {
  const std::uint64_t nodes = fg.node_count();
  if (start >= nodes) {
    throw std::out_of_range("start node " + std::to_string(start) + " out of range [0," +
                            std::to_string(nodes) + ")");
  }
  std::vector<std::uint32_t> step(nodes, UINT32_MAX);
  std::vector<NodeId> path;
  NodeId u = start;
  while (step[u] == UINT32_MAX) {
    step[u] = static_cast<std::uint32_t>(path.size());
    path.push_back(u);
    u = fg.successor[u];
  }
  Trajectory t;
  t.transient.assign(path.begin(), path.begin() + step[u]);
  t.cycle.assign(path.begin() + step[u], path.end());
  return t;
}

}  // namespace brg

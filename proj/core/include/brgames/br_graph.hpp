#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "brgames/game.hpp"

namespace brg {

using NodeId = std::uint32_t;

/// Node ids pack (player, environment): id = player * m^(n-1) + env_rank.
NodeId node_id(int player, std::uint64_t env_rank, int n, int m);
int node_player(NodeId node, int n, int m);
std::uint64_t node_env(NodeId node, int n, int m);

/// Out-degree-1 digraph of clockwork play: node (i, e) points to the node of
/// the next mover after player i responds to environment e. Immutable.
struct FunctionalGraph {
  int n = 0;
  int m = 0;
  std::vector<NodeId> successor;  // size n * m^(n-1)

  std::uint64_t node_count() const { return successor.size(); }
};

/// Largest node count build_full_graph and the spectral routines accept by
/// default; exact determinants grow cubically in this, so keep it modest.
inline constexpr std::uint64_t kDefaultNodeGuard = 1024;

/// `order` is the turn sequence as a permutation of 0..n-1 (empty = identity,
/// players move 0,1,...,n-1,0,...). After player order[t] moves, player
/// order[(t+1) mod n] moves next. Throws std::invalid_argument if `order` is
/// not a permutation.
FunctionalGraph build_functional_graph(const BestResponseMap& brm,
                                       const std::vector<int>& order = {});

/// Same node set with all m choices kept per node (out-degree m, targets
/// distinct). Depends only on (n, m), not on payoffs.
struct FullGraph {
  int n = 0;
  int m = 0;
  std::vector<std::vector<NodeId>> adjacency;  // adjacency[v].size() == m

  std::uint64_t node_count() const { return adjacency.size(); }
};

/// Throws SizeGuardError when n * m^(n-1) exceeds node_guard.
FullGraph build_full_graph(int n, int m, std::uint64_t node_guard = kDefaultNodeGuard);

/// Full graph with the n nodes of one equilibrium profile merged into an
/// absorbing sink (node 0) whose outgoing edges are removed. Remaining nodes
/// keep all m outgoing edges; repeats in an adjacency row are parallel edges
/// and must be preserved for spanning-tree counts.
struct CondensedGraph {
  static constexpr NodeId kSink = 0;

  int n = 0;
  int m = 0;
  std::vector<std::vector<NodeId>> adjacency;  // adjacency[kSink] is empty

  std::uint64_t node_count() const { return adjacency.size(); }
  std::uint64_t sink_in_degree() const;
};

/// `psne` picks which profile's n nodes collapse; non-sink nodes are
/// renumbered 1..node_count-1 in increasing original-id order.
CondensedGraph condense_psne(const FullGraph& full, const StrategyProfile& psne);

/// Nodes of one cycle in successor order, rotated so the smallest id leads.
struct Cycle {
  std::vector<NodeId> nodes;

  std::size_t length() const { return nodes.size(); }
};

/// All cycles of the out-degree-1 graph in one O(node_count) pass, sorted by
/// leading node id. Every cycle length is a multiple of n.
std::vector<Cycle> find_cycles(const FunctionalGraph& fg);

/// A: convergent with exactly one equilibrium; B: convergent with several;
/// C: play never settles from at least one starting node.
enum class GameType { A, B, C };

std::string to_string(GameType type);

struct Classification {
  int psne_count = 0;
  bool convergent = false;
  GameType game_type = GameType::C;
  std::vector<Cycle> cycles;
};

/// Convergent means every starting node reaches an n-cycle, i.e. all cycles
/// have length exactly n; psne_count is the number of n-cycles. Throws
/// DegenerateGameError (via best_response_map) on ties.
Classification classify(const Game& game, const std::vector<int>& order = {});
Classification classify(const BestResponseMap& brm, const std::vector<int>& order = {});

/// The unique walk from `start`: `transient` holds the nodes before the walk
/// first re-enters itself, `cycle` the terminal cycle beginning with the
/// first repeated node. Throws std::out_of_range on a bad start id.
struct Trajectory {
  std::vector<NodeId> transient;
  std::vector<NodeId> cycle;
};

Trajectory trajectory(const FunctionalGraph& fg, NodeId start);

}  // namespace brg

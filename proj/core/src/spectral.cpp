#include "brgames/spectral.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "brgames/errors.hpp"

namespace brg {

namespace {

template <typename Graph>
IntMatrix laplacian_impl(const Graph& g) {
  const std::size_t side = static_cast<std::size_t>(g.node_count());
  IntMatrix L(side);
  for (std::size_t v = 0; v < side; ++v) {
    for (NodeId t : g.adjacency[v]) {
      L.at(v, v) += 1;  // out-degree
      L.at(v, t) -= 1;  // -multiplicity, accumulated over parallel edges
    }
  }
  return L;
}

}  // namespace

IntMatrix IntMatrix::identity(std::size_t side) {
  IntMatrix I(side);
  for (std::size_t i = 0; i < side; ++i) I.at(i, i) = 1;
  return I;
}

IntMatrix laplacian(const FullGraph& full) { return laplacian_impl(full); }
IntMatrix laplacian(const CondensedGraph& cond) { return laplacian_impl(cond); }

IntMatrix block_laplacian_full(int n, int m, std::uint64_t node_guard) {
  if (n == 2) {
    throw std::invalid_argument(
        "block assembly needs n >= 3; for n = 2 use laplacian(build_full_graph(2, m))");
  }
  const std::uint64_t envs = env_count(n, m);  // validates n, m
  const std::uint64_t nodes = static_cast<std::uint64_t>(n) * envs;
  if (nodes > node_guard) {
    throw SizeGuardError("full graph node count n*m^(n-1)", std::to_string(nodes));
  }

  const std::size_t b = static_cast<std::size_t>(envs);  // block side m^(n-1)
  IntMatrix L(static_cast<std::size_t>(nodes));
  for (std::size_t i = 0; i < static_cast<std::size_t>(nodes); ++i) L.at(i, i) = m;

  // Band blocks, one per player k-1 -> k edge family (1-based block index k):
  // -(I_{m^(k-1)} (x) J_m (x) I_{m^(n-1-k)}). Row r and column c of block
  // (k-1, k) are adjacent iff they agree outside the moved player's digit.
  std::uint64_t high = 1;             // m^(k-1)
  std::uint64_t low = envs / static_cast<std::uint64_t>(m);  // m^(n-1-k)
  for (int k = 1; k <= n - 1; ++k) {
    const std::size_t row0 = static_cast<std::size_t>(k - 1) * b;
    const std::size_t col0 = static_cast<std::size_t>(k) * b;
    for (std::uint64_t a = 0; a < high; ++a) {
      for (std::uint64_t t = 0; t < static_cast<std::uint64_t>(m); ++t) {
        for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(m); ++c) {
          for (std::uint64_t r = 0; r < low; ++r) {
            const std::uint64_t row = (a * m + t) * low + r;
            const std::uint64_t col = (a * m + c) * low + r;
            L.at(row0 + row, col0 + col) = -1;
          }
        }
      }
    }
    high *= static_cast<std::uint64_t>(m);
    low /= static_cast<std::uint64_t>(m);
  }

  // Wrap-around block (last player -> player 0): entry (r, c) is an edge iff
  // floor(c / m) equals r mod m^(n-2), i.e. the target keeps the source's
  // trailing digits and appends the mover's choice.
  const std::uint64_t keep = envs / static_cast<std::uint64_t>(m);  // m^(n-2)
  const std::size_t row0 = static_cast<std::size_t>(n - 1) * b;
  for (std::uint64_t r = 0; r < envs; ++r) {
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(m); ++c) {
      L.at(row0 + r, (r % keep) * m + c) = -1;
    }
  }
  return L;
}

BigInt det_exact(IntMatrix mat) {
  const std::size_t k = mat.side();
  if (k == 0) return 1;

  BigInt prev = 1;  // pivot of the previous step, divides every new entry exactly
  int sign = 1;
  for (std::size_t p = 0; p + 1 < k; ++p) {
    if (mat.at(p, p) == 0) {
      std::size_t swap_row = p + 1;
      while (swap_row < k && mat.at(swap_row, p) == 0) ++swap_row;
      if (swap_row == k) return 0;
      for (std::size_t c = p; c < k; ++c) {
        std::swap(mat.at(p, c), mat.at(swap_row, c));
      }
      sign = -sign;
    }
    for (std::size_t r = p + 1; r < k; ++r) {
      for (std::size_t c = p + 1; c < k; ++c) {
        mat.at(r, c) = (mat.at(p, p) * mat.at(r, c) - mat.at(r, p) * mat.at(p, c)) / prev;
      }
      mat.at(r, p) = 0;
    }
    prev = mat.at(p, p);
  }
  return sign > 0 ? mat.at(k - 1, k - 1) : -mat.at(k - 1, k - 1);
}

BigInt spanning_tree_count(const CondensedGraph& cond) {
  const IntMatrix L = laplacian(cond);
  const std::size_t side = L.side() - 1;
  IntMatrix reduced(side);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      reduced.at(r, c) = L.at(r + 1, c + 1);  // drop the sink row and column
    }
  }
  return det_exact(std::move(reduced));
}

Rational type_a_frequency_via_kirchhoff(int n, int m, std::uint64_t node_guard) {
  const FullGraph full = build_full_graph(n, m, node_guard);
  StrategyProfile first;
  first.s.assign(static_cast<std::size_t>(n), 0);
  const BigInt trees = spanning_tree_count(condense_psne(full, first));
  // Any profile could anchor the count; each of the m^n choices contributes
  // the same number of trees, and each tree fixes the remaining nodes' edges.
  const BigInt numer = int_pow(BigInt(m), static_cast<unsigned>(n)) * trees;
  const BigInt denom =
      int_pow(BigInt(m), static_cast<unsigned>(static_cast<std::uint64_t>(n) *
                                               env_count(n, m)));
  return Rational(numer, denom);
}

}  // namespace brg

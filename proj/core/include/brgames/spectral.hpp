#pragma once

#include <cstddef>
#include <vector>

#include "brgames/br_graph.hpp"
#include "brgames/numeric.hpp"

namespace brg {

/// Dense square matrix of arbitrary-precision integers, row-major. Everything
/// in this header is exact; no floating point anywhere.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t side) : side_(side), a_(side * side) {}

  static IntMatrix identity(std::size_t side);

  std::size_t side() const { return side_; }

  BigInt& at(std::size_t r, std::size_t c) { return a_[r * side_ + c]; }
  const BigInt& at(std::size_t r, std::size_t c) const { return a_[r * side_ + c]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t side_;
  std::vector<BigInt> a_;
};

/// Out-degree Laplacian: diagonal = out-degree, entry (i,j) = -(number of
/// parallel edges i->j). Row sums are zero except the condensed sink row,
/// which is all zeros.
IntMatrix laplacian(const FullGraph& full);
IntMatrix laplacian(const CondensedGraph& cond);

/// The same matrix as laplacian(build_full_graph(n, m)) assembled directly
/// from its block structure: m on the diagonal, one -(I (x) J (x) I) band
/// block per consecutive player pair, and a wrap-around block from the last
/// player back to the first. Requires n >= 3 (for n = 2 the band and the
/// wrap-around coincide; call laplacian() on the built graph instead, which
/// this error message points to). Guarded like build_full_graph.
IntMatrix block_laplacian_full(int n, int m, std::uint64_t node_guard = kDefaultNodeGuard);

/// Exact determinant by fraction-free (Bareiss) elimination with row
/// pivoting. Returns 0 for singular input.
BigInt det_exact(IntMatrix mat);

/// Number of spanning arborescences oriented toward the sink: determinant of
/// the condensed Laplacian with the sink row and column deleted.
BigInt spanning_tree_count(const CondensedGraph& cond);

/// Frequency of convergent-with-unique-equilibrium games recomputed by
/// counting: m^n * spanning_tree_count / m^(n * m^(n-1)), reduced.
/// Independent of the closed-form route and must agree with it exactly.
Rational type_a_frequency_via_kirchhoff(int n, int m,
                                        std::uint64_t node_guard = kDefaultNodeGuard);

}  // namespace brg

#pragma once

#include <cstdint>

namespace brg {

/// 64-bit finalizer with full avalanche (the SplitMix64 output stage).
/// Bijective, so distinct inputs never collide.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Standard-normal quantile function (inverse CDF), accurate to double
/// precision on (0, 1). Deterministic across platforms for a given libm;
/// only the ordering of outputs matters downstream.
double inverse_normal_cdf(double p);

/// Stateless random-access generator: output `index` of stream `stream`
/// under `seed` is a pure function of the three values, so any number of
/// workers can draw disjoint index ranges with no shared state and results
/// never depend on scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept;

  /// Pseudorandom 64-bit word at position `index`.
  std::uint64_t word(std::uint64_t index) const noexcept;

  /// Uniform draw strictly inside (0, 1) with 53-bit resolution.
  double uniform01(std::uint64_t index) const noexcept;

  /// Standard-normal draw: inverse CDF applied to uniform01(index).
  double normal(std::uint64_t index) const noexcept;

 private:
  std::uint64_t key_;
};

}  // namespace brg

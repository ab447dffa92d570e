#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace brg {

/// A best response is not a strict, unique maximizer at some (player,
/// environment) pair. Carries the first offending pair.
class DegenerateGameError : public std::runtime_error {
 public:
  DegenerateGameError(int player, std::uint64_t env_rank)
      : std::runtime_error("degenerate game: tied best response for player " +
                           std::to_string(player) + " at environment " +
                           std::to_string(env_rank)),
        player_(player),
        env_rank_(env_rank) {}

  int player() const { return player_; }
  std::uint64_t env_rank() const { return env_rank_; }

 private:
  int player_;
  std::uint64_t env_rank_;
};

/// A requested computation exceeds a configured size limit (node count for
/// graph construction, configuration count for exhaustive enumeration).
class SizeGuardError : public std::runtime_error {
 public:
  SizeGuardError(const std::string& what, std::string size)
      : std::runtime_error(what + " (" + size + ")"), size_(std::move(size)) {}

  const std::string& size() const { return size_; }

 private:
  std::string size_;
};

/// Malformed or unsupported on-disk document.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace brg

#pragma once

// Inline fixture games and path plumbing shared by the test suites.

#include <cstdlib>
#include <string>

#include "brgames/game.hpp"

namespace test_support {

/// 3-player, 2-strategy game with a unique equilibrium at (0,1,0) whose play
/// graph nevertheless contains a 6-cycle, so play does not settle from every
/// start. Payoffs are player-major over profile ranks s0*4 + s1*2 + s2.
inline brg::Game nonconvergent_unique_psne() {
  return brg::Game(3, 2,
                   {0, 0, 1, 0, 1, 1, 0, 1,    // player 0
                    0, 0, 1, 1, 0, 1, 1, 0,    // player 1
                    0, 1, 1, 0, 1, 0, 0, 1});  // player 2
}

inline brg::Game matching_pennies() {
  return brg::Game(2, 2, {1, -1, -1, 1, -1, 1, 1, -1});
}

inline brg::Game prisoners_dilemma() {
  return brg::Game(2, 2, {3, 0, 5, 1, 3, 5, 0, 1});
}

inline brg::Game pure_coordination() {
  return brg::Game(2, 2, {1, 0, 0, 1, 1, 0, 0, 1});
}

inline std::string fixtures_dir() {
  const char* env = std::getenv("BRGAMES_FIXTURES");
  return env != nullptr ? env : "tests/fixtures";
}

}  // namespace test_support

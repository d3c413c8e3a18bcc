// Seeded random machines. The same seed and options give the same machine on
// every platform (only raw mt19937_64 draws are used).

#pragma once

#include <cstdint>
#include <random>

#include "omegatrans/core.hpp"

namespace omegatrans {

struct GenOptions {
  std::size_t states = 3;
  std::size_t colorings = 1;
  Color colors = 2;
  std::size_t input_letters = 2;
  std::size_t output_letters = 2;
  /// Per-mille chance that a (state, letter) pair gets a transition.
  unsigned density = 900;
  std::size_t max_output = 2;
  /// SSTs only: number of registers including out.
  std::size_t registers = 2;
};

/// Letters "a", "b", ... and "x", "y", ... (wrapping to a0, a1, ... past 26).
Alphabet letter_alphabet(std::size_t size, char first);

Transducer random_one_way(std::uint64_t seed, const GenOptions& options = {});
/// Deterministic, initial state forward, endmarker convention respected.
Transducer random_two_way(std::uint64_t seed, const GenOptions& options = {});
/// Copyless with out-discipline.
CopylessSst random_sst(std::uint64_t seed, const GenOptions& options = {});

}  // namespace omegatrans

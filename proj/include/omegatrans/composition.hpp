// Composition of reversible two-way transducers in the product of their
// state spaces.

#pragma once

#include "omegatrans/core.hpp"

namespace omegatrans {

struct FiniteRunSummary {
  enum class Exit : std::uint8_t { Left, Right, Looping, Stuck };
  Exit exit = Exit::Stuck;
  StateId state = kNoState;  // exit state for Left/Right
  Word production;
  ColorVector min_colors;  // `sentinel` when the run is empty

  bool usable() const { return exit == Exit::Left || exit == Exit::Right; }
};

/// Runs `machine` on the finite word v alone. A forward entry state starts on
/// the first letter, a backward one on the last. The run ends when the head
/// leaves v on either side; it never reads the left endmarker.
FiniteRunSummary run_on_finite(const Transducer& machine, const Word& v, StateId entry,
                               const ColorVector& sentinel);

/// Per-coloring odd ceilings of `machine` (see odd_ceiling).
ColorVector sentinel_colors(const Transducer& machine);

/// T∘S: feeds the output of S to T. Both must be reversible. The result has
/// exactly |Q_S|·|Q_T| states (unreachable ones included) and k_S + k_T
/// colorings, S's first.
Transducer compose(const Transducer& S, const Transducer& T);

}  // namespace omegatrans

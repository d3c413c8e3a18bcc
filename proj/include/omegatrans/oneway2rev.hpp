// One-way deterministic parity transducer to reversible two-way transducer.
//
// Two synchronised heads walk around the tree of partial runs that merge
// into the run from the initial configuration, one along its upper outline
// and one along its lower outline. A state (q̲, q̄) where both heads sit on
// the same state q is a configuration of the simulated run.

#pragma once

#include <optional>

#include "omegatrans/core.hpp"

namespace omegatrans {

/// The next state above q (in declaration order) that merges with q on a:
/// the smallest q' with q < q' and δ(q,a) = δ(q',a).
std::optional<StateId> abv(const Transducer& machine, Symbol a, StateId q);

/// Throws NotDeterministic, or InvalidMachine for a machine with backward states.
/// Only states reachable from the initial one are emitted; names read
/// "_q^p" with '_' for a head above the state and '^' for a head below.
Transducer one_way_to_reversible(const Transducer& machine);

}  // namespace omegatrans

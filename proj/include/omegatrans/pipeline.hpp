// Deterministic two-way to reversible, and machines without acceptance.

#pragma once

#include <string_view>
#include <vector>

#include "omegatrans/core.hpp"
#include "omegatrans/twoway2sst.hpp"

namespace omegatrans {

/// two_way_to_sst followed by sst_to_reversible.
Transducer dbt_to_rbt(const Transducer& machine, const TwoWayToSstOptions& options = {});

/// Same machine with no colorings: only reading the whole word and producing
/// infinite output remain as requirements.
Transducer drop_acceptance(const Transducer& machine);

/// accepting[i] marks transitions()[i].
using BuchiMarking = std::vector<bool>;

/// One coloring, 0 on accepting transitions and 1 elsewhere.
Transducer buchi_as_parity(const Transducer& machine, const BuchiMarking& accepting);

/// Marks transitions whose first color is `color`; all; none; or an explicit
/// list of transition indices ("3,5,8").
BuchiMarking marking_by_color(const Transducer& machine, Color color = 0);
BuchiMarking marking_all(const Transducer& machine);
BuchiMarking marking_none(const Transducer& machine);
BuchiMarking marking_from_list(const Transducer& machine, std::string_view list);

/// Reversible Büchi transducer to an equivalent reversible one without
/// acceptance, with exactly three copies of every state: simulate silently
/// up to an accepting transition, rewind to the previous one (or to the
/// start of the run), then replay while producing output.
/// Throws NotReversible.
Transducer buchi_to_noacc(const Transducer& machine, const BuchiMarking& accepting);

}  // namespace omegatrans

// Copyless parity SST to reversible two-way transducer.
//
// The SST is split into a one-way machine D that emits each transition's
// substitution as a letter, and a reversible walker F that reads that stream
// and reconstructs register contents by following the register flow
// backwards and forwards. The result is F composed with the reversible
// version of D.

#pragma once

#include <vector>

#include "omegatrans/core.hpp"

namespace omegatrans {

struct SubstitutionStream {
  /// One-way machine over the SST's input whose output letters are
  /// substitutions; letter i of its output alphabet is letters[i].
  Transducer machine;
  std::vector<Substitution> letters;
};

/// Throws InvalidSst.
SubstitutionStream sst_to_substitution_stream(const CopylessSst& sst);

/// Walker over the substitution alphabet of `stream`. States r_i (backward:
/// the content of r is still to be produced) and r_o (forward: it has just
/// been produced); starts in out_o; no colorings.
Transducer build_register_walker(const CopylessSst& sst, const SubstitutionStream& stream);

/// Reachable part of the composition of the walker with the reversible
/// substitution stream.
Transducer sst_to_reversible(const CopylessSst& sst);

}  // namespace omegatrans

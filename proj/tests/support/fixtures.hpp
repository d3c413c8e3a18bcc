// Shared inputs: the bundled machines and the seeded machine families used by
// the property suites.

#pragma once

#include <cstdint>
#include <string>

#include "omegatrans/core.hpp"
#include "omegatrans/generate.hpp"
#include "omegatrans/lasso.hpp"

namespace fixtures {

using namespace omegatrans;

Transducer bundled_transducer(const std::string& file);
CopylessSst bundled_sst(const std::string& file);

Lasso lasso(const std::string& text, const Alphabet& alphabet);

// One forward state looping on every letter of {a, b} with `color`, writing
// `out` (possibly empty) each step.
Transducer single_loop(Color color, const std::string& out);

// Seed-derived sizes; every family stays deterministic.
GenOptions one_way_options(std::uint64_t seed);   // n <= 4, k <= 2, colors <= 3
GenOptions two_way_options(std::uint64_t seed);   // n <= 3, k = 1, colors <= 2
GenOptions pipeline_options(std::uint64_t seed);  // n <= 3, k <= 2, colors <= 3

}  // namespace fixtures

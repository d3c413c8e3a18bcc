// Ultimately periodic words u·v^ω.

#pragma once

#include <cstdint>
#include <vector>

#include "omegatrans/core.hpp"

namespace omegatrans {

struct Lasso {
  Word prefix;
  Word period;

  /// Letter at index i of the denoted infinite word.
  Symbol at(std::int64_t i) const {
    const auto u = static_cast<std::int64_t>(prefix.size());
    if (i < u) return prefix[static_cast<std::size_t>(i)];
    return period[static_cast<std::size_t>((i - u) % static_cast<std::int64_t>(period.size()))];
  }

  friend bool operator==(const Lasso& a, const Lasso& b) {
    return a.prefix == b.prefix && a.period == b.period;
  }
  friend bool operator<(const Lasso& a, const Lasso& b) {
    return a.prefix != b.prefix ? a.prefix < b.prefix : a.period < b.period;
  }
};

/// Length of the shortest root x with w = x^k (w nonempty), via the failure function.
std::size_t primitive_root_length(const Word& w);
bool is_primitive(const Word& w);

/// Unique minimal representation: primitive period, shortest prefix.
/// Throws Error on an empty period.
Lasso canonicalize(const Lasso& w);
bool lasso_equal(const Lasso& a, const Lasso& b);

/// First n letters of the denoted word.
Word unroll(const Lasso& w, std::size_t n);

/// All canonical lassos over {0..alphabet_size-1} with |u| <= max_prefix and
/// |v| <= max_period, in length-lexicographic order.
std::vector<Lasso> canonical_lassos(std::size_t alphabet_size, std::size_t max_prefix,
                                    std::size_t max_period);

/// Seeded random canonical lassos (duplicates removed, order stable).
std::vector<Lasso> random_lassos(std::size_t count, std::uint64_t seed, std::size_t alphabet_size,
                                 std::size_t max_prefix, std::size_t max_period);

}  // namespace omegatrans

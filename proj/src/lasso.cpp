#include "omegatrans/lasso.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace omegatrans {

std::size_t primitive_root_length(const Word& w) {
  const auto n = w.size();
  if (n == 0) return 0;
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    auto k = border[i - 1];
    while (k > 0 && w[i] != w[k]) k = border[k - 1];
    if (w[i] == w[k]) ++k;
    border[i] = k;
  }
  const auto p = n - border[n - 1];
  return n % p == 0 ? p : n;
}

bool is_primitive(const Word& w) { return !w.empty() && primitive_root_length(w) == w.size(); }

Lasso canonicalize(const Lasso& w) {
  if (w.period.empty()) throw Error("lasso period must be nonempty");
  Lasso out;
  out.prefix = w.prefix;
  out.period.assign(w.period.begin(),
                    w.period.begin() + static_cast<std::ptrdiff_t>(primitive_root_length(w.period)));
  // u·x·(v'·x)^ω = u·(x·v')^ω: absorb the prefix tail into a rotated period.
  while (!out.prefix.empty() && out.prefix.back() == out.period.back()) {
    out.prefix.pop_back();
    std::rotate(out.period.rbegin(), out.period.rbegin() + 1, out.period.rend());
  }
  return out;
}

bool lasso_equal(const Lasso& a, const Lasso& b) { return canonicalize(a) == canonicalize(b); }

Word unroll(const Lasso& w, std::size_t n) {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(w.at(static_cast<std::int64_t>(i)));
  return out;
}

namespace {

void all_words(std::size_t alphabet_size, std::size_t length, std::vector<Word>& out) {
  Word w(length, 0);
  while (true) {
    out.push_back(w);
    std::size_t i = length;
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(++w[i]) < alphabet_size) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (length == 0) return;
  }
}

}  // namespace

std::vector<Lasso> canonical_lassos(std::size_t alphabet_size, std::size_t max_prefix,
                                    std::size_t max_period) {
  std::vector<Lasso> result;
  if (alphabet_size == 0) return result;
  std::vector<Word> periods;
  for (std::size_t len = 1; len <= max_period; ++len) all_words(alphabet_size, len, periods);
  std::vector<Word> prefixes;
  for (std::size_t len = 0; len <= max_prefix; ++len) all_words(alphabet_size, len, prefixes);
  for (const auto& v : periods) {
    if (!is_primitive(v)) continue;
    for (const auto& u : prefixes) {
      if (!u.empty() && u.back() == v.back()) continue;
      result.push_back({u, v});
    }
  }
  std::stable_sort(result.begin(), result.end(), [](const Lasso& a, const Lasso& b) {
    const auto la = a.prefix.size() + a.period.size();
    const auto lb = b.prefix.size() + b.period.size();
    if (la != lb) return la < lb;
    return a < b;
  });
  return result;
}

std::vector<Lasso> random_lassos(std::size_t count, std::uint64_t seed, std::size_t alphabet_size,
                                 std::size_t max_prefix, std::size_t max_period) {
  std::mt19937_64 rng(seed);
  std::vector<Lasso> result;
  std::set<Lasso> seen;
  if (alphabet_size == 0 || max_period == 0) return result;
  for (std::size_t attempt = 0; result.size() < count && attempt < 20 * count + 100; ++attempt) {
    Lasso w;
    w.prefix.resize(rng() % (max_prefix + 1));
    w.period.resize(1 + rng() % max_period);
    for (auto& s : w.prefix) s = static_cast<Symbol>(rng() % alphabet_size);
    for (auto& s : w.period) s = static_cast<Symbol>(rng() % alphabet_size);
    w = canonicalize(w);
    if (seen.insert(w).second) result.push_back(w);
  }
  return result;
}

}  // namespace omegatrans

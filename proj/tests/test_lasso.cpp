#include <set>

#include "doctest.h"
#include "omegatrans/io.hpp"
#include "omegatrans/lasso.hpp"
#include "oracles.hpp"

using namespace omegatrans;

namespace {

// Two lassos denote the same word iff they agree on a window covering both
// prefixes and a common multiple of the periods.
bool same_word(const Lasso& a, const Lasso& b) {
  const std::size_t n = a.prefix.size() + b.prefix.size() + a.period.size() * b.period.size();
  return unroll(a, n) == unroll(b, n);
}

Lasso L(const std::string& s) { return parse_lasso(s, Alphabet({"a", "b"})); }

}  // namespace

TEST_CASE("primitive roots") {
  CHECK(primitive_root_length({0, 1, 0, 1}) == 2);
  CHECK(primitive_root_length({0, 0, 0}) == 1);
  CHECK(primitive_root_length({0, 1, 0}) == 3);
  CHECK(is_primitive({0, 1}));
  CHECK_FALSE(is_primitive({1, 1}));
}

TEST_CASE("canonical form") {
  CHECK(canonicalize(L("ab(ab)")) == L("(ab)"));
  CHECK(canonicalize(L("a(baba)")) == L("(ab)"));
  CHECK(canonicalize(L("b(aa)")) == L("b(a)"));
  CHECK(canonicalize(L("aab(b)")) == L("aa(b)"));
  CHECK_THROWS_AS(canonicalize(Lasso{{0}, {}}), Error);
  CHECK(lasso_equal(L("ab(ab)"), L("a(ba)")));
  CHECK_FALSE(lasso_equal(L("(ab)"), L("(ba)")));
}

TEST_CASE("there are sixteen canonical lassos with short prefix and period over two letters") {
  const auto all = canonical_lassos(2, 2, 2);
  CHECK(all.size() == 16);
  std::set<std::string> names;
  for (const auto& w : all) names.insert(format_lasso(w, Alphabet({"a", "b"})));
  const std::set<std::string> expected{"(a)",    "(b)",    "(ab)",   "(ba)",   "a(b)",   "a(ab)",
                                       "b(a)",   "b(ba)",  "aa(b)",  "aa(ab)", "ab(a)",  "ab(ba)",
                                       "ba(b)",  "ba(ab)", "bb(a)",  "bb(ba)"};
  CHECK(names == expected);
}

TEST_CASE("canonical lassos are pairwise distinct words and cover every lasso") {
  const auto all = canonical_lassos(2, 2, 3);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(canonicalize(all[i]) == all[i]);
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(same_word(all[i], all[j]));
  }
  // Every raw lasso in range canonicalizes into the list and keeps its word.
  std::set<Lasso> set(all.begin(), all.end());
  for (std::size_t n = 0; n < 64; ++n) {
    Lasso raw;
    const std::size_t up = n % 3, vp = 1 + (n / 3) % 3;
    for (std::size_t i = 0; i < up; ++i) raw.prefix.push_back(static_cast<Symbol>((n >> i) & 1));
    for (std::size_t i = 0; i < vp; ++i) raw.period.push_back(static_cast<Symbol>((n >> (i + 2)) & 1));
    const auto c = canonicalize(raw);
    CHECK(same_word(raw, c));
    CHECK(set.count(c) == 1);
  }
}

TEST_CASE("random lassos are reproducible and canonical") {
  const auto a = random_lassos(50, 9, 3, 4, 4);
  CHECK(a == random_lassos(50, 9, 3, 4, 4));
  for (const auto& w : a) CHECK(canonicalize(w) == w);
}

TEST_CASE("lasso syntax") {
  const Alphabet A({"a", "b", "#"});
  CHECK(format_lasso(parse_lasso("ab#(a)", A), A) == "ab#(a)");
  CHECK_THROWS_AS(parse_lasso("ab", A), ParseError);
  CHECK_THROWS_AS(parse_lasso("a()", A), ParseError);
  CHECK_THROWS_AS(parse_lasso("(c)", A), ParseError);
  const Alphabet B({"go", "stop"});
  const auto w = parse_lasso("go (stop go)", B);
  CHECK(w.prefix == Word{0});
  CHECK(w.period == Word{1, 0});
}

#include "doctest.h"
#include "fixtures.hpp"
#include "omegatrans/composition.hpp"
#include "omegatrans/eval.hpp"
#include "omegatrans/generate.hpp"
#include "omegatrans/oneway2rev.hpp"
#include "oracles.hpp"

using namespace omegatrans;

namespace {

struct Stats {
  std::size_t total = 0, inconclusive = 0;
};

// Evaluate S, feed its output lasso to T, compare with the composed machine.
void two_stage(const Transducer& S, const Transducer& T, const Transducer& C, const Lasso& w,
               Stats& stats) {
  ++stats.total;
  const auto s = eval_two_way(S, w);
  const auto c = eval_two_way(C, w);
  if (!s.conclusive() || !c.conclusive()) {
    ++stats.inconclusive;
    return;
  }
  INFO("lasso " << oracle::show(w) << " S " << verdict_name(s.verdict) << " C "
                << verdict_name(c.verdict));
  if (!s.in_domain()) {
    CHECK_FALSE(c.in_domain());
    return;
  }
  const auto t = eval_two_way(T, *s.output);
  if (!t.conclusive()) {
    ++stats.inconclusive;
    return;
  }
  CHECK(c.in_domain() == t.in_domain());
  if (c.in_domain() && t.in_domain()) CHECK(lasso_equal(*c.output, *t.output));
}

Transducer reversible_one_way(std::uint64_t seed, const Alphabet& in, const Alphabet& out) {
  auto o = fixtures::one_way_options(seed);
  o.output_letters = out.size();
  o.input_letters = in.size();
  auto m = one_way_to_reversible(random_one_way(seed, o));
  return oracle::with_alphabets(m, in, out);
}

}  // namespace

TEST_CASE("finite runs") {
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  const auto& A = mcr.input_alphabet();
  const Word ab{A.at("a"), A.at("b")};
  const auto sentinel = sentinel_colors(mcr);
  CHECK(sentinel == ColorVector{1});
  auto r = run_on_finite(mcr, ab, *mcr.find_state("q1"), sentinel);
  CHECK(r.exit == FiniteRunSummary::Exit::Right);
  CHECK(r.production == ab);
  CHECK(r.min_colors == ColorVector{0});
  r = run_on_finite(mcr, ab, *mcr.find_state("q2"), sentinel);
  CHECK(r.exit == FiniteRunSummary::Exit::Left);
  CHECK(r.state == *mcr.find_state("q2"));
  CHECK(r.production == Word{A.at("b"), A.at("a")});
  r = run_on_finite(mcr, {}, *mcr.find_state("q1"), sentinel);
  CHECK(r.exit == FiniteRunSummary::Exit::Right);
  CHECK(r.min_colors == sentinel);
}

TEST_CASE("map-copy-reverse composed with itself") {
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  const auto C = compose(mcr, mcr);
  CHECK(C.num_states() == 9);
  CHECK(validate_reversible(C));
  CHECK(C.colorings() == 2);
  Stats st;
  for (const auto& w : canonical_lassos(3, 2, 3)) two_stage(mcr, mcr, C, w, st);
  CHECK(st.inconclusive == 0);
}

TEST_CASE("rejects non-reversible or mismatched inputs") {
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  const auto fm = fixtures::bundled_transducer("finitely_many_a.json");
  CHECK_THROWS_AS(compose(fm, fm), NotReversible);
  const auto f3 = one_way_to_reversible(fixtures::bundled_transducer("fig3_automaton.json"));
  CHECK_THROWS_AS(compose(mcr, f3), AlphabetMismatch);
}

TEST_CASE("random reversible pairs") {
  const Alphabet ab({"a", "b"});
  Stats st;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto S = reversible_one_way(2 * seed, ab, ab);
    const auto T = reversible_one_way(2 * seed + 1, ab, ab);
    const auto C = compose(S, T);
    INFO("seed " << seed);
    CHECK(C.num_states() == S.num_states() * T.num_states());
    CHECK(validate_reversible(C));
    for (const auto& w : canonical_lassos(2, 2, 2)) two_stage(S, T, C, w, st);
  }
  MESSAGE("inconclusive " << st.inconclusive << " of " << st.total);
  CHECK(st.inconclusive * 20 < st.total);
}

TEST_CASE("two-way second stage") {
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  const Alphabet in({"a", "b"});
  Stats st;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto S = reversible_one_way(seed, in, mcr.input_alphabet());
    const auto C = compose(S, mcr);
    CHECK(validate_reversible(C));
    for (const auto& w : canonical_lassos(2, 2, 2)) two_stage(S, mcr, C, w, st);
  }
  CHECK(st.inconclusive * 20 < st.total);
}

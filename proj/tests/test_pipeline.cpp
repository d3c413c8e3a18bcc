#include "doctest.h"
#include "fixtures.hpp"
#include "omegatrans/eval.hpp"
#include "omegatrans/generate.hpp"
#include "omegatrans/io.hpp"
#include "omegatrans/oneway2rev.hpp"
#include "omegatrans/pipeline.hpp"
#include "oracles.hpp"

using namespace omegatrans;
using fixtures::lasso;

namespace {

// Büchi acceptance read straight off a long naive run.
bool buchi_accepts(const Transducer& m, const BuchiMarking& marks, const Lasso& w) {
  const auto r = oracle::long_run(m, w, 6000);
  if (r.stuck || r.repeated) return false;
  for (auto i : r.tail)
    if (marks[static_cast<std::size_t>(i)]) return true;
  return false;
}

void equivalent(const Transducer& a, const Transducer& b, const std::vector<Lasso>& ls) {
  const auto rep = equiv_on_lassos(&a, &b, ls);
  for (std::size_t i = 0; i < rep.disagreements.size() && i < 3; ++i)
    MESSAGE(oracle::show(rep.disagreements[i].input) << " " << rep.disagreements[i].reason);
  CHECK(rep.ok());
  CHECK(rep.inconclusive * 20 <= rep.total);
}

}  // namespace

TEST_CASE("pipeline on map-copy-reverse") {
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  const auto r = dbt_to_rbt(mcr);
  CHECK(validate_reversible(r));
  CHECK(r.colorings() == mcr.colorings());
  equivalent(mcr, r, canonical_lassos(3, 2, 3));
}

TEST_CASE("pipeline on one-way input follows the one-way construction") {
  const auto f = fixtures::bundled_transducer("finitely_many_a.json");
  const auto r = dbt_to_rbt(f);
  CHECK(validate_reversible(r));
  equivalent(f, r, canonical_lassos(2, 3, 3));
  equivalent(one_way_to_reversible(f), r, canonical_lassos(2, 3, 3));
}

TEST_CASE("pipeline on random two-way machines") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto m = random_two_way(seed, fixtures::pipeline_options(seed));
    INFO("seed " << seed);
    const auto r = dbt_to_rbt(m);
    CHECK(validate_reversible(r));
    equivalent(m, r, canonical_lassos(2, 2, 2));
  }
}

TEST_CASE("dropping acceptance") {
  const auto fig3 = fixtures::bundled_transducer("fig3_automaton.json");
  const auto open = drop_acceptance(fig3);
  CHECK(open.colorings() == 0);
  const auto& A = fig3.input_alphabet();
  // Without colors only survival of the run matters, and the output stays finite.
  CHECK(eval_two_way(open, lasso("bb(a)", A)).verdict == Verdict::RejectedStuck);
  CHECK(eval_two_way(open, lasso("a(b)", A)).verdict == Verdict::AcceptedEmptyOutput);

  const auto fm = fixtures::bundled_transducer("finitely_many_a.json");
  const auto total = drop_acceptance(fm);
  for (const auto& w : canonical_lassos(2, 3, 3)) {
    const auto full = eval_two_way(fm, w);
    const auto r = eval_two_way(total, w);
    REQUIRE(r.verdict == Verdict::Accepted);
    CHECK(lasso_equal(*r.output, w));
    if (full.in_domain()) CHECK(lasso_equal(*full.output, *r.output));
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto m = random_two_way(seed, fixtures::pipeline_options(seed));
    const auto d = drop_acceptance(m);
    for (const auto& w : canonical_lassos(2, 2, 2)) {
      const auto a = eval_two_way(m, w), b = eval_two_way(d, w);
      if (!a.in_domain()) continue;
      REQUIRE(b.in_domain());
      CHECK(lasso_equal(*a.output, *b.output));
    }
  }
}

TEST_CASE("all colors even: dropping changes nothing") {
  const auto even = fixtures::single_loop(0, "x");
  equivalent(even, drop_acceptance(even), canonical_lassos(2, 2, 2));
}

TEST_CASE("Büchi markings as parity") {
  const auto fig3 = fixtures::bundled_transducer("fig3_automaton.json");
  CHECK(marking_by_color(fig3, 0) == BuchiMarking{false, false, false, true, true});
  CHECK(marking_from_list(fig3, "0,4") == BuchiMarking{true, false, false, false, true});
  CHECK_THROWS_AS(marking_from_list(fig3, "9"), InvalidMachine);
  CHECK_THROWS_AS(marking_from_list(fig3, "x"), InvalidMachine);

  for (const auto& marks : {marking_all(fig3), marking_none(fig3), marking_from_list(fig3, "3"),
                            marking_from_list(fig3, "4"), marking_from_list(fig3, "0,2")}) {
    const auto p = buchi_as_parity(fig3, marks);
    CHECK(p.colorings() == 1);
    for (const auto& w : canonical_lassos(2, 2, 3))
      CHECK(eval_two_way(p, w).automaton_accepts() == buchi_accepts(fig3, marks, w));
  }
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  for (const auto& w : canonical_lassos(3, 2, 3)) {
    CHECK_FALSE(eval_two_way(buchi_as_parity(mcr, marking_none(mcr)), w).automaton_accepts());
    const auto all = eval_two_way(buchi_as_parity(mcr, marking_all(mcr)), w);
    CHECK(all.automaton_accepts() == oracle::long_run(mcr, w, 6000).parity_ok);
  }
}

TEST_CASE("Büchi to no acceptance") {
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  const auto all = buchi_to_noacc(mcr, marking_all(mcr));
  CHECK(all.num_states() == 9);
  CHECK(all.colorings() == 0);
  CHECK(validate_reversible(all));
  equivalent(buchi_as_parity(mcr, marking_all(mcr)), all, canonical_lassos(3, 2, 3));
  equivalent(mcr, all, canonical_lassos(3, 2, 3));

  // Nothing accepting: the machine never leaves simulation mode.
  const auto none = buchi_to_noacc(mcr, marking_none(mcr));
  for (const auto& w : canonical_lassos(3, 2, 2)) CHECK_FALSE(eval_two_way(none, w).in_domain());

  for (const char* list : {"0", "2", "9", "0,5", "3,9"}) {
    const auto marks = marking_from_list(mcr, list);
    const auto n = buchi_to_noacc(mcr, marks);
    INFO("marking " << list);
    CHECK(validate_reversible(n));
    equivalent(buchi_as_parity(mcr, marks), n, canonical_lassos(3, 2, 3));
  }

  const auto fm = fixtures::bundled_transducer("finitely_many_a.json");
  CHECK_THROWS_AS(buchi_to_noacc(fm, marking_all(fm)), NotReversible);
}

TEST_CASE("Büchi to no acceptance on reversible one-way machines") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto o = fixtures::one_way_options(seed);
    o.colorings = 1;
    o.colors = 2;
    const auto r = one_way_to_reversible(random_one_way(seed, o));
    const auto marks = marking_by_color(r, 0);
    const auto n = buchi_to_noacc(r, marks);
    INFO("seed " << seed);
    CHECK(n.num_states() == 3 * r.num_states());
    CHECK(validate_reversible(n));
    equivalent(buchi_as_parity(r, marks), n, canonical_lassos(2, 2, 2));
  }
}

TEST_CASE("finitely many a: parity domain") {
  const auto m = fixtures::bundled_transducer("finitely_many_a.json");
  const auto& A = m.input_alphabet();
  for (const char* w : {"b(b)", "ab(b)", "aab(b)", "bab(b)"}) {
    const auto r = eval_two_way(m, lasso(w, A));
    REQUIRE(r.verdict == Verdict::Accepted);
    CHECK(lasso_equal(*r.output, lasso(w, A)));
  }
  for (const char* w : {"(a)", "(ab)", "b(abb)"})
    CHECK(eval_two_way(m, lasso(w, A)).verdict == Verdict::RejectedParity);
}

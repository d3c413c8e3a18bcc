#include "doctest.h"
#include "fixtures.hpp"
#include "forest_check.hpp"
#include "omegatrans/eval.hpp"
#include "omegatrans/generate.hpp"
#include "omegatrans/twoway2sst.hpp"
#include "oracles.hpp"

using namespace omegatrans;

namespace {

void report(const std::vector<std::string>& bad) {
  for (std::size_t i = 0; i < bad.size() && i < 5; ++i) MESSAGE(bad[i]);
  CHECK(bad.empty());
}

void same_semantics(const Transducer& m, const CopylessSst& sst, const Lasso& w) {
  const auto a = eval_two_way(m, w);
  const auto b = eval_sst(sst, w);
  INFO("lasso " << oracle::show(w) << ": " << verdict_name(a.verdict) << " vs "
                << verdict_name(b.verdict));
  REQUIRE(a.conclusive());
  REQUIRE(b.conclusive());
  CHECK(a.in_domain() == b.in_domain());
  CHECK(a.automaton_accepts() == b.automaton_accepts());
  if (a.in_domain() && b.in_domain()) {
    const auto pa = output_prefix(a, 1000), pb = output_prefix(b, 1000);
    CHECK(pb.size() == 1000);
    CHECK(pa == pb);
  }
}

}  // namespace

TEST_CASE("map-copy-reverse") {
  const auto m = fixtures::bundled_transducer("mcr_rbt.json");
  const auto c = two_way_to_sst_detailed(m);
  CHECK(validate_sst(c.sst).empty());
  CHECK(c.max_edges <= 2 * m.num_states() - 2);
  report(oracle::forest_mismatches(m, c, 5));
  for (const auto& w : canonical_lassos(3, 2, 3)) same_semantics(m, c.sst, w);
}

TEST_CASE("one-way input keeps the forest empty") {
  const auto f = fixtures::bundled_transducer("finitely_many_a.json");
  const auto c = two_way_to_sst_detailed(f);
  CHECK(c.max_nodes == 0);
  CHECK(c.sst.num_registers() == 1);
  for (const auto& s : c.states) CHECK(s.forest.nodes.empty());
  for (const auto& w : canonical_lassos(2, 2, 3)) same_semantics(f, c.sst, w);
}

TEST_CASE("the first step of the forest") {
  const auto m = fixtures::bundled_transducer("mcr_rbt.json");
  const auto init = initial_state(m);
  CHECK(init.state.q == m.initial());
  // q2 on the endmarker exits in q3, which is not the main state.
  REQUIRE(init.state.forest.runs().size() == 1);
  CHECK(init.state.forest.runs()[0] ==
        std::pair<StateId, StateId>{*m.find_state("q2"), *m.find_state("q3")});
  const auto s = step(init.state, m.input_alphabet().at("#"), m);
  REQUIRE(s);
  CHECK(s->next.q == *m.find_state("q1"));
}

TEST_CASE("state cap") {
  GenOptions g;
  g.states = 6;
  g.density = 1000;
  for (std::uint64_t seed = 0;; ++seed) {
    const auto m = random_two_way(seed, g);
    const auto full = two_way_to_sst(m).num_states();
    if (full < 4) continue;
    TwoWayToSstOptions o;
    o.max_states = full - 1;
    CHECK_THROWS_AS(two_way_to_sst(m, o), StateExplosion);
    o.max_states = full;
    CHECK(two_way_to_sst(m, o).num_states() == full);
    break;
  }
}

TEST_CASE("random two-way machines") {
  std::size_t nodes = 0, states = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto o = fixtures::two_way_options(seed);
    const auto m = random_two_way(seed, o);
    INFO("seed " << seed);
    const auto c = two_way_to_sst_detailed(m);
    CHECK(validate_sst(c.sst).empty());
    CHECK(c.max_nodes <= 2 * o.states - 2);
    CHECK(c.max_edges <= 2 * o.states - 2);
    nodes = std::max(nodes, c.max_nodes);
    states = std::max(states, c.sst.num_states());
    report(oracle::forest_mismatches(m, c, 4));
    for (const auto& w : canonical_lassos(2, 2, 2)) same_semantics(m, c.sst, w);
  }
  MESSAGE("largest forest " << nodes << " nodes, largest SST " << states << " states");
}

TEST_CASE("larger machines with merging runs") {
  std::size_t nodes = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    GenOptions o;
    o.states = 4 + seed % 3;
    o.colorings = 1 + seed % 2;
    o.colors = 3;
    o.density = 1000;
    const auto m = random_two_way(seed, o);
    INFO("seed " << seed);
    const auto c = two_way_to_sst_detailed(m);
    CHECK(validate_sst(c.sst).empty());
    CHECK(c.max_nodes <= 2 * o.states - 2);
    nodes = std::max(nodes, c.max_nodes);
    report(oracle::forest_mismatches(m, c, 4));
    for (const auto& w : canonical_lassos(2, 2, 2)) same_semantics(m, c.sst, w);
  }
  CHECK(nodes >= 4);
}

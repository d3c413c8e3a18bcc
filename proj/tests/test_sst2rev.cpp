#include "doctest.h"
#include "fixtures.hpp"
#include "omegatrans/eval.hpp"
#include "omegatrans/generate.hpp"
#include "omegatrans/sst2rev.hpp"
#include "omegatrans/twoway2sst.hpp"
#include "oracles.hpp"

using namespace omegatrans;

namespace {

struct Tally {
  std::size_t total = 0, inconclusive = 0, in_domain = 0;
};

void same_semantics(const CopylessSst& sst, const Transducer& rev, const Lasso& w, Tally& t) {
  ++t.total;
  const auto a = eval_sst(sst, w);
  const auto b = eval_two_way(rev, w);
  INFO("lasso " << oracle::show(w) << ": " << verdict_name(a.verdict) << " vs "
                << verdict_name(b.verdict));
  if (!a.conclusive() || !b.conclusive()) {
    ++t.inconclusive;
    return;
  }
  CHECK(a.in_domain() == b.in_domain());
  CHECK(a.automaton_accepts() == b.automaton_accepts());
  if (a.in_domain() && b.in_domain()) {
    ++t.in_domain;
    CHECK(output_prefix(a, 1000) == output_prefix(b, 1000));
    if (a.output) CHECK(lasso_equal(*a.output, *b.output));
  }
}

}  // namespace

TEST_CASE("substitution stream") {
  const auto sst = fixtures::bundled_sst("mcr_sst.json");
  const auto stream = sst_to_substitution_stream(sst);
  CHECK(stream.letters.size() == 3);
  CHECK(stream.machine.is_one_way());
  CHECK(stream.machine.output_alphabet().size() == 3);
  CHECK(stream.machine.colorings() == sst.colorings());
}

TEST_CASE("register walker") {
  const auto sst = fixtures::bundled_sst("mcr_sst.json");
  const auto stream = sst_to_substitution_stream(sst);
  const auto walker = build_register_walker(sst, stream);
  CHECK(validate_reversible(walker));
  CHECK(walker.num_states() == 2 * sst.num_registers());
  CHECK(walker.colorings() == 0);
  CHECK(walker.is_forward(walker.initial()));
}

TEST_CASE("map-copy-reverse as a streaming transducer") {
  const auto sst = fixtures::bundled_sst("mcr_sst.json");
  const auto rev = sst_to_reversible(sst);
  CHECK(validate_reversible(rev));
  CHECK(rev.colorings() == sst.colorings());
  Tally t;
  for (const auto& w : canonical_lassos(3, 2, 3)) same_semantics(sst, rev, w, t);
  CHECK(t.inconclusive == 0);
  CHECK(t.in_domain > 20);
  const auto mcr = fixtures::bundled_transducer("mcr_rbt.json");
  CHECK(equiv_on_lassos(&mcr, &rev, canonical_lassos(3, 2, 3)).ok());
}

TEST_CASE("random streaming transducers") {
  Tally t;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GenOptions o;
    o.states = 1 + seed % 3;
    o.registers = 1 + seed % 4;
    o.colorings = seed % 3;
    o.colors = 3;
    const auto sst = random_sst(seed, o);
    INFO("seed " << seed);
    const auto rev = sst_to_reversible(sst);
    CHECK(validate_reversible(rev));
    for (const auto& w : canonical_lassos(2, 2, 2)) same_semantics(sst, rev, w, t);
  }
  MESSAGE("in domain " << t.in_domain << ", inconclusive " << t.inconclusive << " of " << t.total);
  CHECK(t.inconclusive * 20 < t.total);
}

TEST_CASE("streaming transducers built from two-way machines") {
  Tally t;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = random_two_way(seed, fixtures::two_way_options(seed));
    const auto sst = two_way_to_sst(m);
    const auto rev = sst_to_reversible(sst);
    INFO("seed " << seed);
    CHECK(validate_reversible(rev));
    for (const auto& w : canonical_lassos(2, 2, 2)) same_semantics(sst, rev, w, t);
  }
  CHECK(t.inconclusive * 20 < t.total);
}

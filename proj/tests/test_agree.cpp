#include <doctest.h>

#include "redkit/agree.hpp"
#include "redkit/gen.hpp"
#include "redkit/json_io.hpp"
#include "redkit/verify.hpp"

using namespace redkit;

namespace {

FunctionFamily tiny_family(uint32_t n,
                           std::vector<std::pair<std::vector<uint32_t>,
                                                 std::vector<uint32_t>>> defs) {
  FunctionFamily f;
  f.n = n;
  f.supports.universe_size = n;
  for (auto& [sup, ones] : defs) {
    Bitset s(n), v(n);
    for (uint32_t x : sup) s.set(x);
    for (uint32_t x : ones) v.set(x);
    f.supports.sets.push_back(s);
    f.values.push_back(v);
  }
  f.validate();
  return f;
}

}  // namespace

TEST_CASE("disagreement basics") {
  FunctionFamily f = tiny_family(
      6, {{{0, 1, 2}, {1}},      // f0: 0->0 1->1 2->0
          {{0, 1, 2}, {1, 2}},   // f1: 0->0 1->1 2->1
          {{3, 4}, {3}}});       // disjoint support
  CHECK(disagreement(f, 0, 0) == 0);
  CHECK(disagreement(f, 0, 1) == 1);
  CHECK(disagreement(f, 0, 2) == 0);  // empty intersection
}

TEST_CASE("agreement probability") {
  FunctionFamily solo = tiny_family(4, {{{0, 1}, {0}}});
  CHECK(agreement_probability(solo, Rat(0)) == Rat(1));

  // two functions with disa > zeta n: only the diagonal is consistent
  FunctionFamily pair = tiny_family(4, {{{0, 1, 2, 3}, {}},
                                        {{0, 1, 2, 3}, {0, 1, 2, 3}}});
  CHECK(agreement_probability(pair, Rat(1, 2)) == Rat(1, 2));
  CHECK(agreement_probability(pair, Rat(0)) == Rat(1, 2));

  // restrictions of a single global: 1 for any zeta
  SetSystem sup = sample_random(30, 5, 0.5, 3);
  Bitset g(30);
  for (uint32_t i = 0; i < 30; i += 3) g.set(i);
  FunctionFamily fam = gen::family_from_global(sup, g);
  CHECK(agreement_probability(fam, Rat(0)) == Rat(1));

  // diagonal always counts: agr_0 >= 1/k
  FunctionFamily r = gen::random_family(20, 6, 0.5, 9);
  CHECK(agreement_probability(r, Rat(0)) >= Rat(1, 6));
}

TEST_CASE("agreement probability is monotone in zeta") {
  FunctionFamily f = gen::random_family(24, 7, 0.6, 21);
  Rat a = agreement_probability(f, Rat(0));
  Rat b = agreement_probability(f, Rat(1, 10));
  Rat c = agreement_probability(f, Rat(1, 2));
  CHECK(a <= b);
  CHECK(b <= c);
}

TEST_CASE("consistency graph construction") {
  // pairwise disa: (0,1)=0, (0,2) and (1,2) large
  FunctionFamily f = tiny_family(8, {{{0, 1, 2, 3, 4, 5, 6, 7}, {0, 1}},
                                     {{0, 1, 2, 3, 4, 5, 6, 7}, {0, 1}},
                                     {{0, 1, 2, 3, 4, 5, 6, 7}, {4, 5, 6, 7}}});
  // disa(0,2) = |{0,1} xor {4,5,6,7}| = 6 ; zeta' n = 4
  RedBlueGraph g = build_consistency_graph(f, Rat(0), Rat(1, 2));
  CHECK(g.blue(0, 1));
  CHECK(g.red(0, 2));
  CHECK(g.red(1, 2));
  CHECK(g.blue_edge_count() == 1);
  CHECK(g.red_edge_count() == 2);

  // zeta == zeta': every pair is exactly one of blue/red
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    FunctionFamily r = gen::random_family(20, 6, 0.5, seed);
    RedBlueGraph h = build_consistency_graph(r, Rat(1, 10), Rat(1, 10));
    uint64_t pairs = 6 * 5 / 2;
    CHECK(h.blue_edge_count() + h.red_edge_count() == pairs);
  }

  // identical functions: complete blue
  SetSystem sup = sample_random(16, 4, 0.7, 2);
  Bitset glob(16);
  FunctionFamily all_same = gen::family_from_global(sup, glob);
  RedBlueGraph cb = build_consistency_graph(all_same, Rat(0), Rat(1, 4));
  CHECK(cb.blue_edge_count() == 6);
  CHECK(cb.red_edge_count() == 0);
}

TEST_CASE("majority decode") {
  // single member: extends by zeros
  FunctionFamily f = tiny_family(5, {{{1, 3}, {3}}});
  uint32_t uncovered = 0;
  Bitset g = majority_decode(f, {0}, &uncovered);
  CHECK(g.test(3));
  CHECK_FALSE(g.test(1));
  CHECK_FALSE(g.test(0));
  CHECK(uncovered == 3);

  // per-element strict majority: x0 gets votes 1,1,0 and x1 gets 0,1,1
  FunctionFamily v = tiny_family(2, {{{0, 1}, {0}},
                                     {{0, 1}, {0, 1}},
                                     {{0, 1}, {1}}});
  Bitset m = majority_decode(v, {0, 1, 2});
  CHECK(m.test(0));
  CHECK(m.test(1));
}

TEST_CASE("majority decode votes") {
  FunctionFamily v = tiny_family(2, {{{0}, {0}}, {{0}, {0}}, {{0}, {}}});
  Bitset m = majority_decode(v, {0, 1, 2});
  CHECK(m.test(0));  // votes 1,1,0

  FunctionFamily t = tiny_family(2, {{{0}, {0}}, {{0}, {}}});
  Bitset mt = majority_decode(t, {0, 1});
  CHECK_FALSE(mt.test(0));  // tie decodes to 0
}

TEST_CASE("majority decoding bound (lemma inequality)") {
  verify::SuiteResult r = verify::majority_suite(40, 17);
  INFO(r.detail);
  CHECK(r.pass);
  CHECK(r.checked == 40);
}

TEST_CASE("transitivity lemma chain on certified dispersers") {
  verify::SuiteResult r = verify::transitivity_suite(12, 3);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("generalized transitivity chain") {
  verify::SuiteResult r = verify::transitivity2_suite(10, 5);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("disjoint-walk claim") {
  verify::SuiteResult r = verify::disjoint_walks_suite(9, 2);
  INFO(r.detail);
  CHECK(r.pass);

  // contrapositive probe: a family that is NOT a disperser can violate the
  // claim, and the checker must detect it. Two far-apart members joined by a
  // blue 2-walk through a small middle set.
  FunctionFamily bad = tiny_family(8, {{{0, 1, 2, 3, 4, 5, 6, 7}, {}},
                                       {{0, 1, 2, 3, 4, 5, 6, 7},
                                        {0, 1, 2, 3, 4, 5, 6, 7}},
                                       {{}, {}}});
  // member 2 has empty support: consistent with both endpoints
  DisjointWalkReport rep = check_claim_disjoint_walks(bad, Rat(1, 4), 1, 2);
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].p == 2);
}

TEST_CASE("decoder on restrictions of one global") {
  SetSystem sup = gen::bounded_complement_supports(64, 40, 4, 11);
  Rng rng(3);
  Bitset global(64);
  for (uint32_t x = 0; x < 64; ++x)
    if (rng.bernoulli(1, 2)) global.set(x);
  FunctionFamily fam = gen::family_from_global(sup, global);

  DecodeParams p;
  p.zeta = Rat(1, 4);
  p.ell = 2;
  p.r = 1;
  p.h = 2;
  p.gamma = Rat(1, 2);
  p.mu = Rat(1, 8);
  DecodeOptions o;
  o.best_effort = true;  // k = 40 is far below the theorem threshold
  DecodeResult res = agreement_decode(fam, p, o);
  CHECK(res.success);
  CHECK(res.below_threshold);
  CHECK(res.mean_disa == Rat(0));
  // decoded g agrees with the global on every covered element
  for (uint32_t i : res.subcollection)
    CHECK(disa_count(fam.supports.sets[i], res.global, fam.supports.sets[i],
                     fam.values[i]) == 0);
}

TEST_CASE("decoder declines below threshold unless best-effort") {
  FunctionFamily fam = gen::random_family(32, 8, 0.5, 5);
  DecodeParams p;
  p.zeta = Rat(1, 8);
  p.ell = 2;
  p.r = 1;
  p.h = 2;
  p.gamma = Rat(1, 2);
  p.mu = Rat(1, 8);
  DecodeResult res = agreement_decode(fam, p, {});
  CHECK_FALSE(res.success);
  CHECK(res.below_threshold);
  CHECK(res.subcollection.empty());
}

TEST_CASE("full-threshold decoder run (single seed)") {
  verify::SuiteResult r = verify::decoder_suite(1, 42);
  INFO(r.detail);
  CHECK(r.pass);
  CHECK(r.checked == 1);
}

TEST_CASE("block-planted family: no global close to many locals") {
  FunctionFamily fam = gen::block_planted_family(10, 8, 4, 0.5, 3);
  // agr over ordered pairs with the diagonal: each group of 2 contributes
  // its 4 consistent ordered pairs, so agr >= 4*4/64 = 1/4
  CHECK(agreement_probability(fam, Rat(0)) >= Rat(1, 4));
  uint32_t best = max_consistent_members(fam, Rat(1, 10));
  CHECK(best <= 2 + 1);  // delta k + 1 with delta k = 2
}

TEST_CASE("function family json round trip") {
  FunctionFamily fam = gen::random_family(20, 5, 0.4, 8);
  Json j = to_json(fam);
  FunctionFamily back = family_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(agreement_probability(back, Rat(0)) ==
        agreement_probability(fam, Rat(0)));
}

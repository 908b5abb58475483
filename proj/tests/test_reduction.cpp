#include <doctest.h>

#include "redkit/gen.hpp"
#include "redkit/json_io.hpp"
#include "redkit/reduction.hpp"
#include "redkit/verify.hpp"

using namespace redkit;

namespace {

SetSystem clause_system(uint32_t m, std::vector<std::vector<uint32_t>> sets) {
  SetSystem s;
  s.universe_size = m;
  for (auto& v : sets) {
    Bitset b(m);
    for (uint32_t e : v) b.set(e);
    s.sets.push_back(std::move(b));
  }
  return s;
}

ReductionParams desk_params(double alpha) {
  ReductionParams p;
  p.alpha = rat_from_double(alpha);
  p.gamma = p.alpha / 2;
  p.mu = Rat(3, 10);
  p.zeta = Rat(1, 20);
  p.ell = 2;
  p.r = 2;
  p.h = 2;
  p.k_sets = 4;
  p.eps = Rat(1, 4);
  p.delta_bound = 4;
  return p;
}

}  // namespace

TEST_CASE("eth parameter instantiation") {
  ReductionParams p = instantiate_params_eth(1 << 16, 1, Rat(1, 8), 3);
  CHECK(p.alpha == Rat(1, 256));
  CHECK(p.gamma == Rat(1, 512));
  CHECK(p.gamma == p.alpha / 2);
  // mu = eps^2 gamma^2/(288 Delta^3), zeta = eps^2 gamma^3/(432 Delta^3)
  CHECK(p.mu == Rat(1, 64) * Rat(1, 512 * 512) / (288 * 27));
  CHECK(p.zeta == Rat(1, 64) * rat_pow(Rat(1, 512), 3) / (432 * 27));
  CHECK(p.ell == 2);  // floor(16^(1/4)) = 2
  CHECK(p.k_sets == 16);

  // alpha is antitone in m
  ReductionParams q = instantiate_params_eth(1 << 20, 1, Rat(1, 8), 3);
  CHECK(q.alpha < p.alpha);
  CHECK(q.gamma == q.alpha / 2);
}

TEST_CASE("gap-eth parameter instantiation") {
  ReductionParams p = instantiate_params_gap_eth(Int(1) << 16, Rat(1, 8), 3);
  CHECK(p.ell == 4);  // sqrt(log2 2^16) = 4
  CHECK(p.alpha == Rat(1, 4));
  CHECK(p.gamma == p.alpha / 2);
  CHECK(p.k_sets == 65536);
  // h = ceil(8 ln(2/mu)/alpha), recomputed independently
  double mu = rat_double(p.mu);
  uint32_t h = static_cast<uint32_t>(
      std::ceil(8.0 * std::log(2.0 / mu) / rat_double(p.alpha)));
  CHECK(p.h == h);

  CHECK_THROWS_AS(instantiate_params_gap_eth(Int(3), Rat(1, 8), 3),
                  Infeasible);
}

TEST_CASE("build_2csp tiny examples") {
  // F = {(x1)}, T = {{0},{0}}: each alphabet is the single assignment x1=1
  CnfFormula f = parse_dimacs("p cnf 1 1\n1 0\n");
  SetSystem t = clause_system(1, {{0}, {0}});
  ReductionArtifact art = build_2csp(f, t);
  CHECK(art.instance.alphabet_sizes == std::vector<uint32_t>{1, 1});
  CHECK(labeling_value(art.instance, {0, 0}) == Rat(1));
  CHECK(csp_opt_bruteforce(art.instance).value == Rat(1));

  // empty clause subsets: one empty partial assignment each, value 1
  CnfFormula g = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n");
  SetSystem empt = clause_system(2, {{}, {}, {}});
  ReductionArtifact ae = build_2csp(g, empt);
  CHECK(ae.instance.alphabet_sizes == std::vector<uint32_t>{1, 1, 1});
  CHECK(csp_opt_bruteforce(ae.instance).value == Rat(1));
}

TEST_CASE("alphabet order is lexicographic and labels satisfy clauses") {
  CnfFormula f = parse_dimacs("p cnf 2 1\n1 -2 0\n");
  SetSystem t = clause_system(1, {{0}});
  ReductionArtifact art = build_2csp(f, t);
  // satisfying assignments of (x1 or not x2) over (x1,x2), lexicographic
  // with x1 most significant: 00, 10, 11
  REQUIRE(art.instance.alphabet_sizes[0] == 3);
  CHECK(art.label_codes[0] == std::vector<uint64_t>{0b00, 0b10, 0b11});
  // every label satisfies every clause of its vertex (direct evaluator)
  for (uint32_t i = 0; i < art.instance.k; ++i)
    for (const Bitset& lab : art.labels[i])
      for (uint32_t ci : art.clause_sets.sets[i].elements())
        CHECK(clause_satisfied(art.formula.clauses[ci], lab));
}

TEST_CASE("completeness: planted assignment restricts to a value-1 labeling") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    gen::PlantedCnf pc = gen::gen_planted(12, 16, 4, seed);
    SetSystem t = sample_random(pc.formula.num_clauses(), 4,
                                seed % 2 ? 0.5 : 0.3, seed * 31);
    ReductionArtifact art = build_2csp(pc.formula, t);
    Labeling lab = labeling_from_assignment(art, pc.planted);
    CHECK(labeling_value(art.instance, lab) == Rat(1));
    CHECK(csp_opt_bruteforce(art.instance).value == Rat(1));
  }
}

TEST_CASE("constraint soundness: allowed iff consistent on the overlap") {
  gen::PlantedCnf pc = gen::gen_planted(10, 13, 4, 7);
  SetSystem t = sample_random(pc.formula.num_clauses(), 3, 0.4, 5);
  ReductionArtifact art = build_2csp(pc.formula, t);
  for (uint32_t u = 0; u < art.instance.k; ++u)
    for (uint32_t v = u + 1; v < art.instance.k; ++v) {
      const EdgeConstraint& c = art.instance.constraint(u, v);
      Bitset overlap = art.var_sets.sets[u] & art.var_sets.sets[v];
      for (uint32_t a = 0; a < art.labels[u].size(); ++a)
        for (uint32_t b = 0; b < art.labels[v].size(); ++b) {
          bool agree = true;
          for (uint32_t x : overlap.elements())
            agree = agree &&
                    art.labels[u][a].test(x) == art.labels[v][b].test(x);
          CHECK(c.allows(a, b) == agree);
        }
    }
}

TEST_CASE("var_sets equal clause_vars of the clause sets") {
  gen::PlantedCnf pc = gen::gen_planted(11, 14, 4, 3);
  SetSystem t = sample_random(pc.formula.num_clauses(), 4, 0.5, 9);
  ReductionArtifact art = build_2csp(pc.formula, t);
  for (uint32_t i = 0; i < t.k(); ++i)
    CHECK(art.var_sets.sets[i] ==
          clause_vars(pc.formula, t.sets[i].elements()));
}

TEST_CASE("unsat-trivial vertex flags the instance but still returns") {
  // clause set {x1} and {not x1} in one subset: empty alphabet
  CnfFormula f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  SetSystem t = clause_system(2, {{0, 1}, {0}});
  ReductionArtifact art = build_2csp(f, t);
  CHECK(art.instance.unsat_trivial);
  CHECK(art.instance.alphabet_sizes[0] == 0);
  CHECK(art.instance.alphabet_sizes[1] == 1);
}

TEST_CASE("decode of a pure planted labeling has nu = 0 and bound 1 - mu") {
  gen::PlantedCnf pc = gen::gen_planted(12, 16, 4, 21);
  SetSystem t = sample_random(pc.formula.num_clauses(), 4, 0.5, 22);
  ReductionArtifact art = build_2csp(pc.formula, t);
  art.params = desk_params(0.5);
  art.has_params = true;
  Labeling lab = labeling_from_assignment(art, pc.planted);
  DecodeAssignmentResult dr = decode_assignment(art, lab, 1);
  CHECK(dr.report.decoded);
  CHECK(dr.report.nu == Rat(0));
  CHECK(dr.report.bound == Rat(1) - art.params.mu);
  // decoded assignment agrees with the planted one on covered variables
  for (uint32_t i : dr.report.tstar)
    CHECK(disa_count(art.var_sets.sets[i], dr.assignment.bits,
                     art.var_sets.sets[i],
                     art.labels[i][lab[i]]) == 0);
  CHECK(dr.report.eval >= dr.report.bound);
}

TEST_CASE("decode inequality under label noise (suite)") {
  verify::SuiteResult r = verify::decode_assignment_suite(12, 19);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("soundness threshold comparison is exact") {
  ReductionParams p = desk_params(0.5);
  // threshold = (10 + 64 (r ell)^2 k^{1/ell} + 65536 h ell^2/mu)/k is far
  // above 1 at desk scale, so even a perfect labeling is below threshold
  CHECK_FALSE(meets_soundness_threshold(Rat(1), 4, p));
  // and a huge k with delta = 1 clears it
  CHECK(meets_soundness_threshold(
      Rat(1), 4'000'000, ReductionParams{Rat(1, 2), Rat(1, 4), Rat(1, 2),
                                         Rat(1, 100), 2, 1, 2, Int(4'000'000),
                                         Rat(1, 4), 3, 1}));
}

TEST_CASE("set translation lemmas") {
  // all clause sets = full clause set: both sides trivially uniform and
  // dispersing
  gen::PlantedCnf pc = gen::gen_planted(10, 12, 4, 2);
  uint32_t m = pc.formula.num_clauses();
  std::vector<uint32_t> all(m);
  for (uint32_t i = 0; i < m; ++i) all[i] = i;
  SetSystem t = clause_system(m, {all, all, all});
  ReductionArtifact art = build_2csp(pc.formula, t, 24);
  TranslationReport rep =
      check_set_translation(art, 2, 2, Rat(1, 10), 2, Rat(1, 2), Rat(1, 10));
  CHECK(rep.clause_uniform);
  CHECK(rep.var_uniform);
  CHECK(rep.clause_disperser);
  CHECK(rep.var_disperser);
  CHECK(rep.pass);

  // mu = 1 makes the translated uniformity vacuous (3*Delta*mu >= 1)
  TranslationReport vac =
      check_set_translation(art, 1, 1, Rat(1), 2, Rat(1, 2), Rat(1));
  CHECK(vac.uniform_implication);

  verify::SuiteResult r = verify::translation_suite(10, 23);
  INFO(r.detail);
  CHECK(r.pass);
}

TEST_CASE("artifact json round trip") {
  gen::PlantedCnf pc = gen::gen_planted(10, 12, 4, 5);
  SetSystem t = sample_random(pc.formula.num_clauses(), 3, 0.4, 6);
  ReductionArtifact art = build_2csp(pc.formula, t);
  art.params = desk_params(0.4);
  art.has_params = true;
  Json j = to_json(art);
  ReductionArtifact back = artifact_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
}

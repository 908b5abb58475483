#include <doctest.h>

#include "redkit/csp.hpp"
#include "redkit/gen.hpp"
#include "redkit/json_io.hpp"

using namespace redkit;

namespace {

// instance with every pair allowed
Csp2Instance full_instance(std::vector<uint32_t> sizes) {
  Csp2Instance inst;
  inst.k = static_cast<uint32_t>(sizes.size());
  inst.alphabet_sizes = sizes;
  inst.constraints.resize(inst.num_edges());
  for (uint32_t u = 0; u < inst.k; ++u)
    for (uint32_t v = u + 1; v < inst.k; ++v) {
      EdgeConstraint c;
      c.rows.assign(sizes[u], Bitset(sizes[v]));
      for (auto& row : c.rows) row.set_all();
      inst.constraints[inst.edge_index(u, v)] = std::move(c);
    }
  return inst;
}

Csp2Instance empty_instance(std::vector<uint32_t> sizes) {
  Csp2Instance inst = full_instance(sizes);
  for (auto& c : inst.constraints)
    for (auto& row : c.rows) row.clear();
  return inst;
}

// full enumeration in reverse vertex order — the independent optimum oracle
Rat opt_oracle(const Csp2Instance& inst) {
  std::vector<uint32_t> lab(inst.k, 0);
  uint64_t best = 0;
  auto rec = [&](auto&& self, int d) -> void {
    if (d < 0) {
      best = std::max(best, count_satisfied_edges(inst, lab));
      return;
    }
    for (uint32_t b = inst.alphabet_sizes[d]; b-- > 0;) {
      lab[d] = b;
      self(self, d - 1);
    }
  };
  rec(rec, static_cast<int>(inst.k) - 1);
  return Rat(best, inst.num_edges());
}

}  // namespace

TEST_CASE("labeling_value extremes") {
  Csp2Instance full = full_instance({2, 3, 2});
  CHECK(labeling_value(full, {0, 2, 1}) == Rat(1));
  Csp2Instance none = empty_instance({2, 2, 2});
  CHECK(labeling_value(none, {0, 0, 0}) == Rat(0));
}

TEST_CASE("labeling_value single satisfiable edge") {
  Csp2Instance inst = empty_instance({2, 2, 2});
  inst.constraints[inst.edge_index(0, 1)].rows[1].set(0);
  CHECK(labeling_value(inst, {1, 0, 0}) == Rat(1, 3));
  CHECK(labeling_value(inst, {0, 0, 0}) == Rat(0));
  CHECK_THROWS_AS(labeling_value(inst, {2, 0, 0}), Error);
}

TEST_CASE("csp_opt single edge with one allowed pair") {
  Csp2Instance inst = empty_instance({3, 3});
  inst.constraints[0].rows[1].set(2);
  CspOptResult r = csp_opt_bruteforce(inst);
  CHECK(r.value == Rat(1));
  CHECK(r.witness == Labeling{1, 2});
}

TEST_CASE("csp_opt matches reverse-order enumeration") {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    Csp2Instance inst = gen::random_csp(4, 3, true, seed);
    CspOptResult r = csp_opt_bruteforce(inst);
    CHECK(r.value == opt_oracle(inst));
    CHECK(labeling_value(inst, r.witness) == r.value);
  }
}

TEST_CASE("csp_opt lexicographic tie-break") {
  // every labeling has the same value, so the witness must be all-zeros
  Csp2Instance full = full_instance({3, 2, 2});
  CspOptResult r = csp_opt_bruteforce(full);
  CHECK(r.value == Rat(1));
  CHECK(r.witness == Labeling{0, 0, 0});

  Csp2Instance none = empty_instance({2, 2});
  CspOptResult s = csp_opt_bruteforce(none);
  CHECK(s.value == Rat(0));
  CHECK(s.witness == Labeling{0, 0});
}

TEST_CASE("csp_opt dominates random labelings") {
  Rng rng(3);
  Csp2Instance inst = gen::random_csp(4, 3, false, 77);
  CspOptResult r = csp_opt_bruteforce(inst);
  for (int t = 0; t < 1000; ++t) {
    Labeling lab;
    for (uint32_t v = 0; v < inst.k; ++v)
      lab.push_back(static_cast<uint32_t>(rng.below(inst.alphabet_sizes[v])));
    CHECK(r.value >= labeling_value(inst, lab));
  }
}

TEST_CASE("csp_opt cap and unsat-trivial") {
  Csp2Instance inst = full_instance({4, 4, 4});
  CHECK_THROWS_AS(csp_opt_bruteforce(inst, Rat(10)), CapExceeded);

  Csp2Instance bad = full_instance({2, 2});
  bad.alphabet_sizes[1] = 0;
  bad.constraints[0].rows.assign(2, Bitset(0));
  bad.unsat_trivial = true;
  CspOptResult r = csp_opt_bruteforce(bad);
  CHECK(r.value == Rat(0));
  CHECK(r.witness.empty());
}

TEST_CASE("greedy star achieves 2/k of the optimum when star satisfiable") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Csp2Instance inst = gen::random_csp(5, 3, false, seed);
    Rat star = greedy_star_value(inst);
    Rat opt = csp_opt_bruteforce(inst).value;
    // per-edge satisfiability of the star holds by construction
    // (constraints are nonempty), so the star satisfies k-1 of C(k,2) edges
    bool star_full = star == Rat(inst.k - 1, inst.num_edges());
    if (star_full) CHECK(star >= opt * 2 / inst.k);
  }
}

TEST_CASE("csp json round trip (both storage forms)") {
  Csp2Instance inst = gen::random_csp(4, 3, true, 5);
  Json j = to_json(inst);
  Csp2Instance back = csp_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(csp_opt_bruteforce(back).value == csp_opt_bruteforce(inst).value);
}

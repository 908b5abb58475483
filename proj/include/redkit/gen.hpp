#pragma once

#include <cstdint>
#include <functional>

#include "redkit/agree.hpp"
#include "redkit/csp.hpp"
#include "redkit/formula.hpp"
#include "redkit/redblue.hpp"
#include "redkit/setsys.hpp"

// Seeded generators used by the CLI pipeline, the lemma-verification suites
// and the tests. All deterministic per seed.
namespace redkit::gen {

struct PlantedCnf {
  CnfFormula formula;
  Assignment planted;  // satisfies every clause
};

// Random width-3 CNF with a planted satisfying assignment and per-variable
// occurrence at most delta. Throws Infeasible when delta*num_vars <
// 3*num_clauses. Unused variables are stripped, the planted assignment is
// remapped accordingly.
PlantedCnf gen_planted(uint32_t num_vars, uint32_t num_clauses, uint32_t delta,
                       uint64_t seed);

// Supports of the form [n] minus a random complement of the given size; this
// makes every single intersection of up to `ell` sets miss at most
// ell*comp_size elements, so the disperser property holds by a size argument.
SetSystem bounded_complement_supports(uint32_t n, uint32_t k,
                                      uint32_t comp_size, uint64_t seed);

FunctionFamily family_from_global(const SetSystem& supports,
                                  const Bitset& global);

struct PlantedFamily {
  FunctionFamily family;
  Bitset global;
  std::vector<uint32_t> noisy;  // members re-randomized by flips
};

// Restrictions of one random global function, with `noisy` members perturbed
// by `noisy_flips` in-support flips each and `grey` members by `grey_flips`.
PlantedFamily planted_noisy_family(const SetSystem& supports, uint32_t noisy,
                                   uint32_t noisy_flips, uint32_t grey,
                                   uint32_t grey_flips, uint64_t seed);

// Fully random values on random alpha-dense supports.
FunctionFamily random_family(uint32_t n, uint32_t k, double alpha,
                             uint64_t seed);

// Partition the members into `groups` blocks; each block holds restrictions
// of an independent random global function (the parameter-optimality
// construction).
FunctionFamily block_planted_family(uint32_t n, uint32_t k, uint32_t groups,
                                    double alpha, uint64_t seed);

// Disjoint blue cliques (q0 = 0 transitive for any ell), plus `bridges`
// random blue edges across cliques and red edges drawn on cross-clique pairs
// with probability red_p.
RedBlueGraph clique_union_graph(uint32_t cliques, uint32_t clique_size,
                                double red_p, uint32_t bridges, uint64_t seed);

// Independent blue/red coins per pair (blue wins when both fire).
RedBlueGraph random_redblue(uint32_t k, double blue_p, double red_p,
                            uint64_t seed);

// Random explicit-constraint CSP; every pair list drawn uniformly among
// nonempty subsets unless allow_empty.
Csp2Instance random_csp(uint32_t k, uint32_t max_alphabet, bool allow_empty,
                        uint64_t seed);

// All explicit-constraint instances with the given alphabet sizes, streamed
// in lexicographic order of constraint codes. Returns the instance count.
uint64_t for_each_csp(const std::vector<uint32_t>& alphabet_sizes,
                      const std::function<void(const Csp2Instance&)>& fn);

}  // namespace redkit::gen

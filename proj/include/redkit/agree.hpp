#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redkit/bitset.hpp"
#include "redkit/error.hpp"
#include "redkit/rational.hpp"
#include "redkit/redblue.hpp"
#include "redkit/setsys.hpp"

namespace redkit {

// Collection of local boolean functions f_i : S_i -> {0,1} over universe [n].
// values[i] holds f_i's bits inside supports.sets[i] and zeros outside.
struct FunctionFamily {
  uint32_t n = 0;
  SetSystem supports;
  std::vector<Bitset> values;

  uint32_t k() const { return supports.k(); }
  void validate() const;
};

// |{x in S_i ∩ S_j : f_i(x) != f_j(x)}|.
uint32_t disagreement(const FunctionFamily& f, uint32_t i, uint32_t j);

// Largest integer disagreement count still zeta-consistent: floor(zeta * n).
uint32_t consistency_cutoff(const Rat& zeta, uint32_t n);

// Pr over ORDERED pairs (diagonal included) of zeta-consistency, exact.
Rat agreement_probability(const FunctionFamily& f, const Rat& zeta);

// Generalized two-level consistency graph: blue = zeta-consistent pairs,
// red = zeta_prime-inconsistent pairs (zeta <= zeta_prime). The two-level
// graph is the zeta=0 case. `members`, when given, restricts to a
// subfamily; vertex i of the graph is members[i].
RedBlueGraph build_consistency_graph(const FunctionFamily& f, const Rat& zeta,
                                     const Rat& zeta_prime);
RedBlueGraph build_consistency_graph(const FunctionFamily& f, const Rat& zeta,
                                     const Rat& zeta_prime,
                                     const std::vector<uint32_t>& members);

// Element-wise majority over the covering members of `sub`; ties and
// uncovered elements decode to 0 (uncovered count reported separately).
Bitset majority_decode(const FunctionFamily& f,
                       const std::vector<uint32_t>& sub,
                       uint32_t* uncovered_out = nullptr);

// E_{i in sub}[ disa(g, f_i) ], exact.
Rat mean_disagreement(const FunctionFamily& f, const std::vector<uint32_t>& sub,
                      const Bitset& g);

struct DecodeParams {
  Rat zeta;
  uint32_t ell = 2;
  uint32_t r = 1;
  uint32_t h = 2;
  Rat gamma, mu;

  Rat zeta_prime() const { return mu + 2 * zeta / gamma; }
};

struct DecodeOptions {
  // Below-threshold families are declined (reported, not decoded) unless
  // best_effort is set; best-effort runs are labeled by their warnings and
  // the below_threshold flag. When the threshold IS met, every stage
  // guarantee is mandatory and a miss throws StageFailure.
  bool best_effort = false;
  uint64_t seed = 1;
  uint32_t subset_retries = 1000;
  uint64_t exhaustive_cap = 2'000'000;
};

struct DecodeResult {
  bool success = false;
  bool below_threshold = false;
  std::vector<std::string> warnings;  // degraded stages, best-effort only

  Rat delta;  // measured agr(F)
  std::vector<uint32_t> subcollection;  // U', indices into the family
  Bitset global;                        // g
  uint32_t uncovered = 0;
  Rat mean_disa;  // E_{i in U'}[disa(g, f_i)]

  // Quantities of the run, all exact.
  uint64_t d = 0, d_prime = 0;
  Int q0;
  Rat tau1;            // stage-3 density achieved
  Rat zeta_prime;
  Rat kappa;           // 1 - agr_{zeta'}(F | U')
  Rat size_bound;      // delta*k / (128 ell^2)
  Rat mean_bound_sq;   // n^2 * (65536 h ell^6/(delta k) + mu + 2 zeta/gamma)
  Rat beta_sq;         // 4 * (same radicand)
  uint32_t beta_close_count = 0;  // |{i in U' : disa(g,f_i) <= beta n}|
  Rat markov_bound;    // delta*k / (256 ell^2)
};

// agr(F) >= (10 + 64 (r ell)^2 k^{1/ell}) / k, compared exactly
// (the k^{1/ell} factor is compared in the ell-th power).
bool meets_agreement_threshold(const Rat& delta, uint32_t k, uint32_t r,
                               uint32_t ell);

// The constructive decoder: two-level graph, dense-subgraph extraction,
// exact-size subset selection, generalized graph on the union, second
// extraction, majority decode. Strict mode throws StageFailure when a stage's
// guarantee fails; best-effort mode degrades and records a warning.
DecodeResult agreement_decode(const FunctionFamily& f, const DecodeParams& p,
                              const DecodeOptions& opts = {});

struct DisjointWalkReport {
  bool pass = true;
  struct Violation {
    uint32_t u, v, p;
    uint32_t disjoint_walks;
  };
  std::vector<Violation> violations;
};

// For every red pair of the two-level graph and every 2 <= p <= ell, the
// number of pairwise interior-disjoint blue p-walks between the endpoints is
// < r. Exact small search (r-subset scan with pruning) over enumerated walks.
DisjointWalkReport check_claim_disjoint_walks(const FunctionFamily& f,
                                              const Rat& zeta, uint32_t r,
                                              uint32_t ell,
                                              uint64_t cap = 5'000'000);

// Max over all 2^n global functions of the number of members beta-consistent
// with it (n <= 24). Used for the parameter-optimality sanity check.
uint32_t max_consistent_members(const FunctionFamily& f, const Rat& beta);

}  // namespace redkit

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redkit/agree.hpp"
#include "redkit/csp.hpp"
#include "redkit/formula.hpp"
#include "redkit/setsys.hpp"

namespace redkit {

// Parameter bundle for the reduction and its decode direction. The real
// valued intermediates are snapshotted into exact rationals (a double is an
// exact binary rational) so that every downstream threshold comparison stays
// exact; ell, r, h, k are integer-exact.
struct ReductionParams {
  Rat alpha, gamma, mu, zeta;
  uint32_t ell = 2, r = 1, h = 2;
  Int k_sets;  // ETH route: 2^(ell^2); Gap-ETH route: the given k
  Rat eps;
  uint32_t delta_bound = 3;  // occurrence bound the formulas were set for
  uint32_t c = 1;            // PCP blowup exponent (ETH route only)

  Rat zeta_prime() const { return mu + 2 * zeta / gamma; }
};

// alpha = 1/(log2 m)^(c+1), gamma = alpha/2, mu = eps^2 gamma^2 / (288
// Delta^3), zeta = eps^2 gamma^3 / (432 Delta^3), ell = max(2,
// floor((log2 m)^(1/4))), r = ceil(ln(2/zeta)/alpha^ell), h = ceil(8
// ln(2/mu)/alpha), k = 2^(ell^2).
ReductionParams instantiate_params_eth(uint64_t m, uint32_t c, const Rat& eps,
                                       uint32_t delta_bound);

// alpha = 1/log2(log2 k), ell = floor(sqrt(log2 k)) (>= 2 required), same
// derived formulas, k passed through.
ReductionParams instantiate_params_gap_eth(const Int& k, const Rat& eps,
                                           uint32_t delta_bound);

// The 2-CSP built from a formula and a clause-subset collection: one vertex
// per subset, alphabet = satisfying partial assignments of var(T_i) in
// lexicographic order (ascending variable index, first variable most
// significant), constraints = consistent label pairs (keyed storage).
struct ReductionArtifact {
  CnfFormula formula;
  SetSystem clause_sets;  // over clauses [m]
  SetSystem var_sets;     // var(T_i), over variables [n]
  Csp2Instance instance;
  std::vector<std::vector<uint32_t>> vertex_vars;  // sorted var list per vertex
  std::vector<std::vector<Bitset>> labels;  // per vertex: label -> n-bit bits
  std::vector<std::vector<uint64_t>> label_codes;  // lex code of each label
  ReductionParams params;
  bool has_params = false;
};

ReductionArtifact build_2csp(const CnfFormula& f, const SetSystem& clause_sets,
                             uint32_t var_cap = 20);

// Restriction of a total assignment to every vertex's variable set; fails if
// some restriction does not satisfy the vertex's clauses.
Labeling labeling_from_assignment(const ReductionArtifact& a,
                                  const Assignment& psi);

FunctionFamily family_from_labeling(const ReductionArtifact& a,
                                    const Labeling& lab);

struct DecodeAssignmentReport {
  bool decoded = false;
  bool below_threshold = false;  // vs. the soundness-route threshold
  bool tstar_uniform_certified = false;
  Rat agr;
  uint32_t sprime_size = 0;
  std::vector<uint32_t> tstar;  // vertex indices, |tstar| = h when possible
  Rat nu;                       // E_{T in T*}[disa(g, sigma_T)] / n
  Rat bound;                    // 1 - mu - 3 nu Delta / gamma  (measured Delta)
  uint32_t uncovered = 0;       // variables decoded by the 0-default
  Rat eval;                     // eval_fraction(formula, g)
  std::vector<std::string> warnings;
};

struct DecodeAssignmentResult {
  Assignment assignment;
  DecodeAssignmentReport report;
};

// Soundness-direction pipeline: view the labeling as a function family over
// var_sets, run the agreement decoder (best-effort at desk scale; the report
// records the threshold comparison), pick the size-h subcollection of S'
// minimizing mean disagreement, majority-decode, extend by 0.
DecodeAssignmentResult decode_assignment(const ReductionArtifact& a,
                                         const Labeling& lab,
                                         uint64_t seed = 1);

// delta >= (10 + 64 (r ell)^2 k^{1/ell} + 65536 h ell^2 / mu) / k, exact.
bool meets_soundness_threshold(const Rat& delta, uint32_t k,
                               const ReductionParams& p);

struct TranslationReport {
  bool clause_uniform = false, var_uniform = false;
  bool clause_h_uniform = false, var_h_uniform = false;
  bool clause_disperser = false, var_disperser = false;
  bool uniform_implication = true, h_uniform_implication = true,
       disperser_implication = true;
  bool pass = true;
  std::string detail;
};

// Clause-side well-behavedness must transfer to the variable side with the
// 3*Delta loss: (gamma,mu)-uniformity -> (gamma,3*Delta*mu), and
// (r,ell,eta)-dispersion -> (r,ell,3*Delta*eta). Verified by brute force on
// both sides; a failed implication falsifies the implementation.
TranslationReport check_set_translation(const ReductionArtifact& a, uint32_t r,
                                        uint32_t ell, const Rat& eta,
                                        uint32_t h, const Rat& gamma,
                                        const Rat& mu);

}  // namespace redkit

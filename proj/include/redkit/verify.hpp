#pragma once

#include <cstdint>
#include <string>

#include "redkit/agree.hpp"
#include "redkit/gen.hpp"
#include "redkit/redblue.hpp"
#include "redkit/reduction.hpp"

// Property suites for the combinatorial lemmas. Each suite generates families
// or graphs whose hypotheses are certified (by construction plus checker
// verification), asserts the lemma's conclusion exactly, and reports the
// first failure. Zero tolerance: one failing instance fails the suite.
namespace redkit::verify {

struct SuiteResult {
  bool pass = true;
  uint32_t checked = 0;
  std::string detail;  // first failure, or summary notes
};

// Two-level transitivity: supports certified (r,ell,zeta)-dispersers imply
// the two-level graph is ((r ell)^{2(ell-1)}, ell)-red/blue-transitive.
SuiteResult transitivity_suite(uint32_t count, uint64_t seed);

// Generalized transitivity: certified (gamma,mu)-uniform size-r support
// subcollections and zeta' = mu + 2 zeta/gamma imply no red pair of the
// generalized graph has r or more red-filled 2-walks.
SuiteResult transitivity2_suite(uint32_t count, uint64_t seed);

// Dense-subgraph extraction on synthetic transitive graphs meeting
// |E_b| >= 2 k d0; the returned pair must meet the density bound, re-verified
// by direct recount.
SuiteResult dense_subgraph_suite(uint32_t count, uint64_t seed);

// Majority decoding: mean disagreement <= n sqrt(kappa + zeta'), compared in
// squared form.
SuiteResult majority_suite(uint32_t count, uint64_t seed);

// Disjoint-walk claim: certified dispersers admit < r pairwise disjoint blue
// p-walks between red endpoints for all 2 <= p <= ell.
SuiteResult disjoint_walks_suite(uint32_t count, uint64_t seed);

// Clause-to-variable well-behavedness translation on random planted formulas
// and random clause systems.
SuiteResult translation_suite(uint32_t count, uint64_t seed);

// End-to-end decoder on planted families meeting the agreement threshold
// (supports certified by the set-system checkers): decode succeeds, the
// subcollection size and the mean-disagreement bound hold exactly.
SuiteResult decoder_suite(uint32_t count, uint64_t seed);

// Soundness-direction decode on planted reduction artifacts: whenever the
// returned T* is certified uniform, eval(g) >= 1 - mu - 3 nu Delta / gamma.
SuiteResult decode_assignment_suite(uint32_t count, uint64_t seed);

}  // namespace redkit::verify

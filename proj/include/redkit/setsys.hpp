#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redkit/bitset.hpp"
#include "redkit/error.hpp"
#include "redkit/rational.hpp"
#include "redkit/rng.hpp"

namespace redkit {

// Collection of subsets of [m]. Duplicate member sets are permitted (the
// random model can produce them); all subcollection enumeration is by index,
// not by content.
struct SetSystem {
  uint32_t universe_size = 0;
  std::vector<Bitset> sets;

  uint32_t k() const { return static_cast<uint32_t>(sets.size()); }
  bool operator==(const SetSystem&) const = default;
};

// Targets + verification record for a well-behaved system.
struct WellBehavedCert {
  Rat alpha;
  uint32_t r = 0, ell = 0;
  Rat eta;
  uint32_t h = 0;
  Rat gamma, mu;
  double m0_formula = 0.0;  // the lemma's m0 (reported; constants are asymptotic)
  uint32_t m0_used = 0;
  uint32_t blocks = 0;
  bool unsafe_m0 = false;
  bool has_duplicate_sets = false;
  bool checked_sizes = false;
  bool checked_disperser = false;
  bool checked_uniform = false;
};

// Each element of [m] included in each of the k sets independently with
// probability alpha.
SetSystem sample_random(uint32_t m, uint32_t k, double alpha, uint64_t seed);

// Every set has size <= 2*alpha*m (exact rational comparison).
bool check_sizes(const SetSystem& s, const Rat& alpha);

// |{u : freq(u) >= gamma}| >= (1-mu)*m, frequencies over the whole collection.
bool check_uniform(const SetSystem& s, const Rat& gamma, const Rat& mu);

// Same, restricted to the given member indices.
bool check_uniform_sub(const SetSystem& s, const std::vector<uint32_t>& sub,
                       const Rat& gamma, const Rat& mu);

// Every size-h subcollection (by index) passes check_uniform. Exact
// enumeration of C(k,h) subcollections, guarded by `cap`; a sound
// per-element shortcut certifies the common easy case first.
bool check_all_subcollections_uniform(const SetSystem& s, uint32_t h,
                                      const Rat& gamma, const Rat& mu,
                                      uint64_t cap = 20'000'000);

// (r, ell, eta)-intersection disperser: every family of exactly r pairwise
// disjoint nonempty subcollections, each of at most ell sets, has
// |union of intersections| >= (1-eta)*m. A sound size-based shortcut
// (sum of the ell largest complements <= eta*m forces the property for every
// r) is tried first; otherwise full enumeration, guarded by `cap`.
bool check_disperser(const SetSystem& s, uint32_t r, uint32_t ell,
                     const Rat& eta, uint64_t cap = 50'000'000);

// Enumeration-only variant (no shortcut); used by tests and small instances.
bool check_disperser_enumerate(const SetSystem& s, uint32_t r, uint32_t ell,
                               const Rat& eta, uint64_t cap = 50'000'000);

struct ConstructParams {
  double alpha = 0.5;
  uint32_t r = 1, ell = 2;
  Rat eta;
  uint32_t h = 2;
  Rat mu;
  // m0 override for desk-scale runs; 0 means use the lemma formula (which is
  // astronomically conservative).
  uint32_t m0_override = 0;
  bool allow_unsafe_m0 = true;
  uint32_t retries_per_block = 64;
  bool exhaustive_blocks = false;  // full enumeration for tiny blocks
};

struct ConstructResult {
  SetSystem system;
  WellBehavedCert cert;
};

// Block-partition construction: split [m] into blocks of size in [m0, 2m0],
// search each block for a k-subset collection passing all three verifiers
// block-locally, return element-wise unions (set i = union of block-level
// set i). Throws StageFailure naming the failing block if a block search
// exhausts its budget.
ConstructResult construct_deterministic(uint32_t m, uint32_t k,
                                        const ConstructParams& p,
                                        uint64_t seed);

// The m0 lower-bound formula from the deterministic-construction lemma
// (log base 2 for the k-dependence, natural log for the 1/mu and 1/eta
// factors, matching the tail bounds it is derived from). Reported only.
double m0_formula(uint32_t k, double alpha, double mu, double eta, uint32_t ell);

}  // namespace redkit

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "redkit/bitset.hpp"
#include "redkit/error.hpp"
#include "redkit/rational.hpp"

namespace redkit {

// Binary constraint for one unordered vertex pair. Two storage forms behind
// one membership test:
//   - explicit allowed-pair bitmatrix (generic instances, small alphabets);
//   - consistency keys: (a,b) allowed iff key_u[a] == key_v[b]. This is what
//     the 3-SAT reduction produces (keys are the labels' restrictions to the
//     shared variables); alphabets there are far too large for matrices.
struct EdgeConstraint {
  bool keyed = false;
  // keyed form
  std::vector<uint64_t> key_u, key_v;
  // explicit form: row a (label of u) of allowed b's
  std::vector<Bitset> rows;

  bool allows(uint32_t a, uint32_t b) const {
    return keyed ? key_u[a] == key_v[b] : rows[a].test(b);
  }
  uint64_t count_allowed() const;
};

// 2-CSP on a complete k-vertex graph with per-vertex alphabets. Constraints
// indexed by unordered pair (u < v).
struct Csp2Instance {
  uint32_t k = 0;
  std::vector<uint32_t> alphabet_sizes;
  std::vector<EdgeConstraint> constraints;  // size C(k,2)
  bool unsat_trivial = false;               // some alphabet is empty

  size_t edge_index(uint32_t u, uint32_t v) const {
    // u < v
    return static_cast<size_t>(u) * k - static_cast<size_t>(u) * (u + 1) / 2 +
           (v - u - 1);
  }
  const EdgeConstraint& constraint(uint32_t u, uint32_t v) const {
    return constraints[edge_index(u, v)];
  }
  uint64_t num_edges() const { return static_cast<uint64_t>(k) * (k - 1) / 2; }
  void validate() const;
};

using Labeling = std::vector<uint32_t>;

uint64_t count_satisfied_edges(const Csp2Instance& inst, const Labeling& lab);

// Fraction of satisfied edges, exact. k >= 2 required.
Rat labeling_value(const Csp2Instance& inst, const Labeling& lab);

struct CspOptResult {
  Rat value;
  Labeling witness;  // empty when unsat_trivial
};

// Exact optimum with lexicographically smallest witness (vertex 0 label most
// significant). Depth-first search over labelings in lexicographic order with
// an admissible bound (satisfied-so-far + all undecided edges); pruning on
// "<= best" keeps both exactness and the lex tie-break. `product_cap` guards
// the worst case, which is the full labeling product.
CspOptResult csp_opt_bruteforce(const Csp2Instance& inst,
                                const Rat& product_cap = Rat(10'000'000));

// Greedy star labeling: choose the best label for vertex 0 by counting, for
// each of its labels, how many incident edges can be satisfied by choosing
// the neighbor's label independently; returns the resulting value.
Rat greedy_star_value(const Csp2Instance& inst);

}  // namespace redkit

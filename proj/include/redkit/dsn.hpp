#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "redkit/csp.hpp"
#include "redkit/rational.hpp"

namespace redkit {

struct DsnArc {
  uint32_t tail, head;
  Rat weight;
};

struct DsnInstance {
  uint32_t num_vertices = 0;
  std::vector<DsnArc> arcs;
  std::vector<std::pair<uint32_t, uint32_t>> demands;  // ordered (s, t)
  void validate() const;
};

struct DsnSolution {
  std::vector<uint32_t> arcs;  // chosen arc indices (all zero-weight included)
  Rat cost;
};

// Layered label-selection reduction from a complete-graph 2-CSP. Per vertex i
// a source s_i and sink t_i; per (vertex,label) an out-node and an in-node;
// s_i -> out(i,a) and in(i,a) -> t_i of weight 1/(2k); a zero-weight arc
// out(i,a) -> in(j,b) for every ordered pair i != j with (a,b) allowed;
// demands all ordered (s_i, t_j), i != j, so k' = k^2 - k. The out/in split
// keeps every demand path two label-hops long (no chains), which is what the
// soundness counting needs.
//
// Node layout: s_i = i, t_i = k+i, out(i,a) = 2k + off_i + a,
// in(i,a) = 2k + L + off_i + a with L the total label count.
DsnInstance build_dsn(const Csp2Instance& inst);

// Exact minimum-cost solution, or nullopt when some demand cannot be routed
// at all. Zero-weight arcs are free and always included; the search is a
// lexicographic include/exclude DFS over positive-weight arcs (at most
// `cap`), pruned by partial cost and by reachability of the optimistic
// completion, so the witness is the lexicographically smallest bit vector
// among minimum-cost solutions.
std::optional<DsnSolution> dsn_opt_bruteforce(const DsnInstance& inst,
                                              uint32_t cap = 24);

}  // namespace redkit

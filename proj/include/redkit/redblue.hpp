#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "redkit/bitset.hpp"
#include "redkit/error.hpp"
#include "redkit/rational.hpp"

namespace redkit {

// Graph with two disjoint edge sets over the same vertices; adjacency kept as
// bit rows because the decoder probes red/blue membership in tight loops.
class RedBlueGraph {
 public:
  RedBlueGraph() = default;
  explicit RedBlueGraph(uint32_t k)
      : k_(k), blue_(k, Bitset(k)), red_(k, Bitset(k)) {}

  uint32_t k() const { return k_; }

  void add_blue(uint32_t u, uint32_t v) { add(u, v, blue_, red_); }
  void add_red(uint32_t u, uint32_t v) { add(u, v, red_, blue_); }

  bool blue(uint32_t u, uint32_t v) const { return blue_[u].test(v); }
  bool red(uint32_t u, uint32_t v) const { return red_[u].test(v); }
  const Bitset& blue_row(uint32_t u) const { return blue_[u]; }
  const Bitset& red_row(uint32_t u) const { return red_[u]; }

  uint64_t blue_edge_count() const { return blue_edges_; }
  uint64_t red_edge_count() const { return red_edges_; }
  uint32_t blue_degree(uint32_t u) const { return blue_[u].count(); }

  std::vector<std::pair<uint32_t, uint32_t>> blue_edges() const {
    return edge_list(blue_);
  }
  std::vector<std::pair<uint32_t, uint32_t>> red_edges() const {
    return edge_list(red_);
  }

 private:
  void add(uint32_t u, uint32_t v, std::vector<Bitset>& into,
           std::vector<Bitset>& other) {
    if (u == v) throw Error("red/blue graph: self-loop");
    if (u >= k_ || v >= k_) throw Error("red/blue graph: vertex out of range");
    if (other[u].test(v))
      throw Error("red/blue graph: edge present in both colors");
    if (into[u].test(v)) return;
    into[u].set(v);
    into[v].set(u);
    (&into == &blue_ ? blue_edges_ : red_edges_)++;
  }

  std::vector<std::pair<uint32_t, uint32_t>> edge_list(
      const std::vector<Bitset>& adj) const {
    std::vector<std::pair<uint32_t, uint32_t>> out;
    for (uint32_t u = 0; u < k_; ++u)
      for (uint32_t v : adj[u].elements())
        if (v > u) out.push_back({u, v});
    return out;
  }

  uint32_t k_ = 0;
  std::vector<Bitset> blue_, red_;
  uint64_t blue_edges_ = 0, red_edges_ = 0;
};

// Number of (ell+1)-tuples whose consecutive pairs are blue edges; vertices
// may repeat. Arbitrary precision (the count is k * d^ell scale).
Int count_blue_walks(const RedBlueGraph& g, uint32_t ell);

// All red-filled ell-walks from u to v: consecutive pairs blue, every
// non-consecutive pair red (endpoints included, so {u,v} must be red).
std::vector<std::vector<uint32_t>> enumerate_red_filled(const RedBlueGraph& g,
                                                        uint32_t ell,
                                                        uint32_t u, uint32_t v);

Int count_red_filled(const RedBlueGraph& g, uint32_t ell, uint32_t u,
                     uint32_t v);

struct WalkCensus {
  uint32_t ell = 0;
  Int total_blue_walks;
  Int red_filled_count;
  std::map<std::pair<uint32_t, uint32_t>, Int> per_red_pair;
};
WalkCensus walk_census(const RedBlueGraph& g, uint32_t ell);

struct TransitivityResult {
  bool transitive = false;
  std::optional<std::pair<uint32_t, uint32_t>> worst_pair;
  Int worst_count;
};

// (q, ell)-red/blue transitivity: every red pair joins at most q red-filled
// ell-walks. Returns the maximizing pair and its count.
TransitivityResult check_transitivity(const RedBlueGraph& g, const Int& q,
                                      uint32_t ell);

struct DenseSubgraphs {
  std::vector<uint32_t> u1, u2;
  Rat density;    // non-red fraction of u1 x u2 (ordered pairs)
  Rat threshold;  // (1 - q0*k/d0^ell0) / C(ell0,2)
  uint32_t pivot_u = 0, pivot_v = 0;
  uint32_t survivors = 0;
  Int surviving_blue_walks_lb;  // survivors * d0^ell0 (walk-count invariant)
};

// Constructive dense-subgraph extraction: (a) repeatedly delete vertices of
// blue-degree < d0; (b) scan ordered vertex pairs (u*, v*) of the surviving
// graph in ascending order (u* == v* only, when ell0 == 2) and return the
// first whose blue neighborhoods have non-red ordered-pair fraction at least
// (1 - q0*k/d0^ell0)/C(ell0,2), with k the ORIGINAL vertex count.
DenseSubgraphs find_dense_subgraphs(const RedBlueGraph& g, const Int& q0,
                                    uint32_t ell0, uint32_t d0);

// Non-red ordered-pair count of A x B (vertex index lists).
uint64_t non_red_pairs(const RedBlueGraph& g, const std::vector<uint32_t>& a,
                       const std::vector<uint32_t>& b);

}  // namespace redkit

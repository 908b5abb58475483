#include "redkit/csp.hpp"

#include <algorithm>
#include <unordered_map>

namespace redkit {

uint64_t EdgeConstraint::count_allowed() const {
  if (!keyed) {
    uint64_t n = 0;
    for (const Bitset& r : rows) n += r.count();
    return n;
  }
  std::unordered_map<uint64_t, uint64_t> hist;
  for (uint64_t kv : key_u) hist[kv]++;
  uint64_t n = 0;
  for (uint64_t kv : key_v) {
    auto it = hist.find(kv);
    if (it != hist.end()) n += it->second;
  }
  return n;
}

void Csp2Instance::validate() const {
  if (k < 1) throw Error("csp: k must be >= 1");
  if (alphabet_sizes.size() != k) throw Error("csp: alphabet list size");
  if (constraints.size() != num_edges())
    throw Error("csp: constraint count must be C(k,2)");
  bool any_empty = false;
  for (uint32_t s : alphabet_sizes) any_empty |= (s == 0);
  if (any_empty && !unsat_trivial)
    throw Error("csp: empty alphabet without unsat_trivial flag");
  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v) {
      const EdgeConstraint& c = constraint(u, v);
      if (c.keyed) {
        if (c.key_u.size() != alphabet_sizes[u] ||
            c.key_v.size() != alphabet_sizes[v])
          throw Error("csp: key table size mismatch");
      } else {
        if (c.rows.size() != alphabet_sizes[u])
          throw Error("csp: row count mismatch");
        for (const Bitset& r : c.rows)
          if (r.size() != alphabet_sizes[v])
            throw Error("csp: row width mismatch");
      }
    }
}

uint64_t count_satisfied_edges(const Csp2Instance& inst, const Labeling& lab) {
  if (lab.size() != inst.k) throw Error("labeling size mismatch");
  for (uint32_t v = 0; v < inst.k; ++v)
    if (lab[v] >= inst.alphabet_sizes[v])
      throw Error("label out of range at vertex " + std::to_string(v));
  uint64_t sat = 0;
  for (uint32_t u = 0; u < inst.k; ++u)
    for (uint32_t v = u + 1; v < inst.k; ++v)
      if (inst.constraint(u, v).allows(lab[u], lab[v])) ++sat;
  return sat;
}

Rat labeling_value(const Csp2Instance& inst, const Labeling& lab) {
  if (inst.k < 2) throw Error("labeling_value needs k >= 2");
  return Rat(count_satisfied_edges(inst, lab), inst.num_edges());
}

namespace {

// Index keyed constraints for fast "labels of v consistent with label a of u"
// lookups during the perfect-labeling probe.
struct SideIndex {
  std::unordered_map<uint64_t, std::vector<uint32_t>> by_key;
};

struct Searcher {
  const Csp2Instance& inst;
  std::vector<SideIndex> v_side;  // per edge, index of the higher vertex side
  uint64_t best = 0;
  bool have_best = false;
  Labeling best_witness, current;
  uint64_t total_edges;

  explicit Searcher(const Csp2Instance& i) : inst(i) {
    total_edges = inst.num_edges();
    v_side.resize(inst.constraints.size());
    for (uint32_t u = 0; u < inst.k; ++u)
      for (uint32_t v = u + 1; v < inst.k; ++v) {
        const EdgeConstraint& c = inst.constraint(u, v);
        if (!c.keyed) continue;
        auto& idx = v_side[inst.edge_index(u, v)];
        for (uint32_t b = 0; b < c.key_v.size(); ++b)
          idx.by_key[c.key_v[b]].push_back(b);
      }
  }

  // Perfect-prefix DFS in lexicographic label order; returns true when a
  // fully consistent labeling was found (stored in best_witness). Visits
  // only prefixes whose decided edges are all satisfied, so the first leaf
  // is the lexicographically smallest value-1 labeling.
  bool probe_perfect(uint32_t d) {
    if (d == inst.k) {
      best = total_edges;
      have_best = true;
      best_witness = current;
      return true;
    }
    std::vector<uint32_t> cands = perfect_candidates(d);
    for (uint32_t b : cands) {
      current[d] = b;
      if (probe_perfect(d + 1)) return true;
    }
    return false;
  }

  // Labels of vertex d compatible with every assigned vertex, ascending.
  std::vector<uint32_t> perfect_candidates(uint32_t d) {
    std::vector<uint32_t> cands;
    if (d == 0) {
      cands.resize(inst.alphabet_sizes[0]);
      for (uint32_t b = 0; b < cands.size(); ++b) cands[b] = b;
      return cands;
    }
    const EdgeConstraint& c0 = inst.constraint(0, d);
    if (c0.keyed) {
      const auto& idx = v_side[inst.edge_index(0, d)].by_key;
      auto it = idx.find(c0.key_u[current[0]]);
      if (it == idx.end()) return {};
      cands = it->second;  // already ascending
    } else {
      for (uint32_t b = 0; b < inst.alphabet_sizes[d]; ++b)
        if (c0.rows[current[0]].test(b)) cands.push_back(b);
    }
    std::vector<uint32_t> out;
    for (uint32_t b : cands) {
      bool ok = true;
      for (uint32_t u = 1; u < d && ok; ++u)
        ok = inst.constraint(u, d).allows(current[u], b);
      if (ok) out.push_back(b);
    }
    return out;
  }

  // Exhaustive branch and bound, lexicographic order, strict improvement.
  void bnb(uint32_t d, uint64_t sat) {
    uint64_t decided = static_cast<uint64_t>(d) * (d - 1) / 2;
    if (have_best && sat + (total_edges - decided) <= best) return;
    if (d == inst.k) {
      best = sat;
      have_best = true;
      best_witness = current;
      return;
    }
    for (uint32_t b = 0; b < inst.alphabet_sizes[d]; ++b) {
      uint64_t add = 0;
      for (uint32_t u = 0; u < d; ++u)
        if (inst.constraint(u, d).allows(current[u], b)) ++add;
      current[d] = b;
      bnb(d + 1, sat + add);
    }
  }
};

}  // namespace

CspOptResult csp_opt_bruteforce(const Csp2Instance& inst,
                                const Rat& product_cap) {
  inst.validate();
  if (inst.k < 2) throw Error("csp_opt needs k >= 2");
  if (inst.unsat_trivial) return {Rat(0), {}};
  Rat product(1);
  for (uint32_t s : inst.alphabet_sizes) product *= s;
  if (product > product_cap)
    throw CapExceeded("csp_opt_bruteforce: labeling product exceeds cap");

  Searcher s(inst);
  s.current.assign(inst.k, 0);
  if (s.probe_perfect(0))
    return {Rat(1), s.best_witness};
  s.bnb(0, 0);
  return {Rat(s.best, s.total_edges), s.best_witness};
}

Rat greedy_star_value(const Csp2Instance& inst) {
  if (inst.k < 2) throw Error("greedy_star needs k >= 2");
  if (inst.unsat_trivial) return Rat(0);
  uint64_t best = 0;
  for (uint32_t a = 0; a < inst.alphabet_sizes[0]; ++a) {
    uint64_t sat = 0;
    for (uint32_t v = 1; v < inst.k; ++v) {
      const EdgeConstraint& c = inst.constraint(0, v);
      bool any = false;
      for (uint32_t b = 0; b < inst.alphabet_sizes[v] && !any; ++b)
        any = c.allows(a, b);
      sat += any;
    }
    best = std::max(best, sat);
  }
  return Rat(best, inst.num_edges());
}

}  // namespace redkit

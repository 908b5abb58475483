#include "redkit/dsn.hpp"

#include <algorithm>
#include <unordered_map>

#include "redkit/bitset.hpp"
#include "redkit/error.hpp"

namespace redkit {

void DsnInstance::validate() const {
  for (const DsnArc& a : arcs) {
    if (a.tail >= num_vertices || a.head >= num_vertices)
      throw Error("dsn: arc endpoint out of range");
    if (a.weight < 0) throw Error("dsn: negative weight");
  }
  for (auto [s, t] : demands)
    if (s >= num_vertices || t >= num_vertices)
      throw Error("dsn: demand endpoint out of range");
}

DsnInstance build_dsn(const Csp2Instance& inst) {
  inst.validate();
  const uint32_t k = inst.k;
  std::vector<uint32_t> off(k, 0);
  uint32_t total_labels = 0;
  for (uint32_t i = 0; i < k; ++i) {
    off[i] = total_labels;
    total_labels += inst.alphabet_sizes[i];
  }
  if (total_labels > 4096)
    throw CapExceeded("build_dsn: label count exceeds desk cap");

  DsnInstance d;
  d.num_vertices = 2 * k + 2 * total_labels;
  const Rat w = Rat(1, 2 * static_cast<uint64_t>(k));
  auto out_node = [&](uint32_t i, uint32_t a) { return 2 * k + off[i] + a; };
  auto in_node = [&](uint32_t i, uint32_t a) {
    return 2 * k + total_labels + off[i] + a;
  };

  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t a = 0; a < inst.alphabet_sizes[i]; ++a) {
      d.arcs.push_back({i, out_node(i, a), w});
      d.arcs.push_back({in_node(i, a), k + i, w});
    }

  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v) {
      const EdgeConstraint& c = inst.constraint(u, v);
      auto add_pair = [&](uint32_t a, uint32_t b) {
        d.arcs.push_back({out_node(u, a), in_node(v, b), Rat(0)});
        d.arcs.push_back({out_node(v, b), in_node(u, a), Rat(0)});
      };
      if (c.keyed) {
        std::unordered_map<uint64_t, std::vector<uint32_t>> by_key;
        for (uint32_t b = 0; b < c.key_v.size(); ++b)
          by_key[c.key_v[b]].push_back(b);
        for (uint32_t a = 0; a < c.key_u.size(); ++a) {
          auto it = by_key.find(c.key_u[a]);
          if (it == by_key.end()) continue;
          for (uint32_t b : it->second) add_pair(a, b);
        }
      } else {
        for (uint32_t a = 0; a < c.rows.size(); ++a)
          for (uint32_t b : c.rows[a].elements()) add_pair(a, b);
      }
      if (d.arcs.size() > 2'000'000)
        throw CapExceeded("build_dsn: arc count exceeds desk cap");
    }

  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = 0; j < k; ++j)
      if (i != j) d.demands.push_back({i, k + j});
  return d;
}

namespace {

// Reachability closure masks for <= 64 vertices; the generic path uses
// Bitset rows. Desk instances stay within 64.
struct SmallReach {
  uint32_t n;
  std::vector<uint64_t> adj;

  explicit SmallReach(uint32_t n_) : n(n_), adj(n_, 0) {}
  void add(uint32_t u, uint32_t v) { adj[u] |= 1ULL << v; }
  void remove_all() { std::fill(adj.begin(), adj.end(), 0); }

  uint64_t closure(uint32_t s) const {
    uint64_t visited = 1ULL << s;
    for (;;) {
      uint64_t next = visited;
      uint64_t scan = visited;
      while (scan) {
        uint32_t v = static_cast<uint32_t>(std::countr_zero(scan));
        scan &= scan - 1;
        next |= adj[v];
      }
      if (next == visited) return visited;
      visited = next;
    }
  }
};

bool feasible(const SmallReach& r,
              const std::vector<std::pair<uint32_t, uint32_t>>& demands) {
  // group demands by source to reuse closures
  uint64_t need[64] = {};
  uint64_t sources = 0;
  for (auto [s, t] : demands) {
    need[s] |= 1ULL << t;
    sources |= 1ULL << s;
  }
  while (sources) {
    uint32_t s = static_cast<uint32_t>(std::countr_zero(sources));
    sources &= sources - 1;
    if ((r.closure(s) & need[s]) != need[s]) return false;
  }
  return true;
}

struct DsnSearch {
  const DsnInstance& inst;
  std::vector<uint32_t> pos, zero;            // arc indices by weight class
  std::vector<std::vector<uint64_t>> suffix;  // suffix[i] = adj of arcs i.. + zeros
  Rat best_cost;
  bool have_best = false;
  std::vector<bool> chosen, best_chosen;
  SmallReach cur;

  explicit DsnSearch(const DsnInstance& i)
      : inst(i), cur(i.num_vertices) {}

  void run() {
    for (uint32_t a = 0; a < inst.arcs.size(); ++a)
      (inst.arcs[a].weight == 0 ? zero : pos).push_back(a);
    // optimistic adjacency of "everything from position i onward"
    suffix.assign(pos.size() + 1,
                  std::vector<uint64_t>(inst.num_vertices, 0));
    for (uint32_t a : zero)
      suffix[pos.size()][inst.arcs[a].tail] |= 1ULL << inst.arcs[a].head;
    for (size_t i = pos.size(); i-- > 0;) {
      suffix[i] = suffix[i + 1];
      suffix[i][inst.arcs[pos[i]].tail] |= 1ULL << inst.arcs[pos[i]].head;
    }
    for (uint32_t a : zero) cur.add(inst.arcs[a].tail, inst.arcs[a].head);
    chosen.assign(pos.size(), false);
    dfs(0, Rat(0));
  }

  void dfs(size_t i, Rat cost) {
    if (have_best && cost >= best_cost) return;
    // optimistic completion: chosen arcs + all remaining positive arcs
    {
      SmallReach opt(inst.num_vertices);
      for (uint32_t v = 0; v < inst.num_vertices; ++v)
        opt.adj[v] = cur.adj[v] | suffix[i][v];
      if (!feasible(opt, inst.demands)) return;
    }
    if (i == pos.size()) {
      if (feasible(cur, inst.demands)) {
        best_cost = cost;
        have_best = true;
        best_chosen = chosen;
      }
      return;
    }
    // exclude first: lexicographically smallest bit vector wins ties
    dfs(i + 1, cost);
    const DsnArc& a = inst.arcs[pos[i]];
    uint64_t saved = cur.adj[a.tail];
    cur.adj[a.tail] |= 1ULL << a.head;
    chosen[i] = true;
    dfs(i + 1, cost + a.weight);
    chosen[i] = false;
    cur.adj[a.tail] = saved;
  }
};

}  // namespace

std::optional<DsnSolution> dsn_opt_bruteforce(const DsnInstance& inst,
                                              uint32_t cap) {
  inst.validate();
  if (inst.num_vertices > 64)
    throw CapExceeded("dsn_opt_bruteforce: > 64 vertices");
  uint32_t positive = 0;
  for (const DsnArc& a : inst.arcs) positive += a.weight != 0;
  if (positive > cap)
    throw CapExceeded("dsn_opt_bruteforce: positive arc count exceeds cap");

  DsnSearch s(inst);
  s.run();
  if (!s.have_best) return std::nullopt;

  DsnSolution sol;
  sol.cost = s.best_cost;
  for (size_t i = 0; i < s.pos.size(); ++i)
    if (s.best_chosen[i]) sol.arcs.push_back(s.pos[i]);
  for (uint32_t a : s.zero) sol.arcs.push_back(a);
  std::sort(sol.arcs.begin(), sol.arcs.end());
  return sol;
}

}  // namespace redkit

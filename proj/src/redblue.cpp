#include "redkit/redblue.hpp"

#include <algorithm>

namespace redkit {

Int count_blue_walks(const RedBlueGraph& g, uint32_t ell) {
  if (ell < 1) throw Error("count_blue_walks: ell >= 1");
  const uint32_t k = g.k();
  std::vector<Int> cur(k, 1), next(k);
  for (uint32_t step = 0; step < ell; ++step) {
    for (uint32_t v = 0; v < k; ++v) {
      Int acc = 0;
      for (uint32_t u : g.blue_row(v).elements()) acc += cur[u];
      next[v] = acc;
    }
    std::swap(cur, next);
  }
  Int total = 0;
  for (const Int& c : cur) total += c;
  return total;
}

namespace {

// DFS over blue walks whose prefixes are already red-filled: appending w to
// (v1..vi) requires {vi,w} blue and {vj,w} red for all j < i. The red-filled
// property is monotone over prefixes, so this prunes exactly.
template <typename Visit>
void red_filled_dfs(const RedBlueGraph& g, uint32_t ell, uint32_t u, uint32_t v,
                    Visit&& visit) {
  if (ell < 2) throw Error("red-filled walks need ell >= 2");
  if (!g.red(u, v)) return;  // endpoints are non-consecutive
  std::vector<uint32_t> walk{u};
  auto rec = [&](auto&& self) -> void {
    if (walk.size() == ell) {
      // final vertex must be v; check blue to last and red to interior
      if (!g.blue(walk.back(), v)) return;
      for (size_t j = 0; j + 1 < walk.size(); ++j)
        if (!g.red(walk[j], v)) return;
      walk.push_back(v);
      visit(walk);
      walk.pop_back();
      return;
    }
    for (uint32_t w : g.blue_row(walk.back()).elements()) {
      bool ok = true;
      for (size_t j = 0; j + 1 < walk.size() && ok; ++j)
        ok = g.red(walk[j], w);
      if (!ok) continue;
      walk.push_back(w);
      self(self);
      walk.pop_back();
    }
  };
  rec(rec);
}

}  // namespace

std::vector<std::vector<uint32_t>> enumerate_red_filled(const RedBlueGraph& g,
                                                        uint32_t ell,
                                                        uint32_t u,
                                                        uint32_t v) {
  std::vector<std::vector<uint32_t>> out;
  red_filled_dfs(g, ell, u, v, [&](const std::vector<uint32_t>& w) {
    out.push_back(w);
  });
  return out;
}

Int count_red_filled(const RedBlueGraph& g, uint32_t ell, uint32_t u,
                     uint32_t v) {
  Int n = 0;
  red_filled_dfs(g, ell, u, v, [&](const std::vector<uint32_t>&) { ++n; });
  return n;
}

WalkCensus walk_census(const RedBlueGraph& g, uint32_t ell) {
  WalkCensus c;
  c.ell = ell;
  c.total_blue_walks = count_blue_walks(g, ell);
  c.red_filled_count = 0;
  for (auto [u, v] : g.red_edges()) {
    Int n = count_red_filled(g, ell, u, v) + count_red_filled(g, ell, v, u);
    c.per_red_pair[{u, v}] = n;
    c.red_filled_count += n;
  }
  return c;
}

TransitivityResult check_transitivity(const RedBlueGraph& g, const Int& q,
                                      uint32_t ell) {
  if (ell < 2) throw Error("check_transitivity: ell >= 2");
  TransitivityResult res;
  res.transitive = true;
  res.worst_count = -1;
  for (auto [u, v] : g.red_edges()) {
    // |W(u,v)| == |W(v,u)| by reversal; the definition is per ordered pair
    // with the same bound either way, so checking one direction suffices.
    Int n = count_red_filled(g, ell, u, v);
    if (n > res.worst_count) {
      res.worst_count = n;
      res.worst_pair = {u, v};
    }
    if (n > q) res.transitive = false;
  }
  if (res.worst_count < 0) res.worst_count = 0;
  return res;
}

uint64_t non_red_pairs(const RedBlueGraph& g, const std::vector<uint32_t>& a,
                       const std::vector<uint32_t>& b) {
  Bitset bmask(g.k());
  for (uint32_t v : b) bmask.set(v);
  uint64_t cnt = 0;
  for (uint32_t u : a) cnt += andnot_count(bmask, g.red_row(u));
  return cnt;
}

DenseSubgraphs find_dense_subgraphs(const RedBlueGraph& g, const Int& q0,
                                    uint32_t ell0, uint32_t d0) {
  if (ell0 < 2) throw Error("find_dense_subgraphs: ell0 >= 2");
  const uint32_t k = g.k();
  if (Rat(g.blue_edge_count()) < Rat(2) * k * d0)
    throw StageFailure("dense", "|E_b| < 2*k*d0");

  // (a) delete vertices of blue-degree < d0 until stable (strict, so
  // survivors have degree >= d0 in the surviving graph).
  Bitset alive(k);
  alive.set_all();
  std::vector<uint32_t> deg(k);
  for (uint32_t v = 0; v < k; ++v) deg[v] = g.blue_degree(v);
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t v = 0; v < k; ++v)
      if (alive.test(v) && deg[v] < d0) {
        alive.reset(v);
        changed = true;
        for (uint32_t u : g.blue_row(v).elements())
          if (alive.test(u)) --deg[u];
      }
  }
  if (!alive.any()) throw StageFailure("dense", "preprocessing emptied graph");

  DenseSubgraphs out;
  out.survivors = alive.count();
  out.surviving_blue_walks_lb = Int(out.survivors) * int_pow(d0, ell0);

  // Threshold (1 - q0*k/d0^ell0) / C(ell0, 2), exact.
  Rat tau = (Rat(1) - Rat(q0 * k) / Rat(int_pow(d0, ell0))) /
            Rat(static_cast<uint64_t>(ell0) * (ell0 - 1) / 2);
  out.threshold = tau;

  std::vector<uint32_t> order = alive.elements();
  for (uint32_t us : order) {
    Bitset nu = g.blue_row(us) & alive;
    if (!nu.any()) continue;
    std::vector<uint32_t> u1 = nu.elements();
    for (uint32_t vs : order) {
      if (ell0 == 2 && vs != us) continue;
      Bitset nv = g.blue_row(vs) & alive;
      if (!nv.any()) continue;
      uint64_t nonred = 0;
      for (uint32_t a : u1) nonred += andnot_count(nv, g.red_row(a));
      uint64_t total = static_cast<uint64_t>(u1.size()) * nv.count();
      if (Rat(nonred) >= tau * total) {
        out.u1 = u1;
        out.u2 = nv.elements();
        out.density = Rat(nonred, total);
        out.pivot_u = us;
        out.pivot_v = vs;
        return out;
      }
    }
  }
  throw StageFailure("dense", "no ordered pair met the density bound");
}

}  // namespace redkit

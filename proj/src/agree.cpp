#include "redkit/agree.hpp"

#include <algorithm>
#include <numeric>

namespace redkit {

void FunctionFamily::validate() const {
  if (supports.universe_size != n) throw Error("family: universe mismatch");
  if (values.size() != supports.sets.size())
    throw Error("family: values/support count mismatch");
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != n) throw Error("family: value width mismatch");
    for (size_t w = 0; w < values[i].words(); ++w)
      if (values[i].word(w) & ~supports.sets[i].word(w))
        throw Error("family: value bit outside support");
  }
}

uint32_t disagreement(const FunctionFamily& f, uint32_t i, uint32_t j) {
  if (i >= f.k() || j >= f.k()) throw Error("family index out of range");
  return disa_count(f.supports.sets[i], f.values[i], f.supports.sets[j],
                    f.values[j]);
}

uint32_t consistency_cutoff(const Rat& zeta, uint32_t n) {
  if (zeta < 0) throw Error("zeta must be >= 0");
  Rat zn = zeta * n;
  Int fl = boost::multiprecision::numerator(zn) /
           boost::multiprecision::denominator(zn);
  if (fl > n) fl = n;
  return static_cast<uint32_t>(fl);
}

Rat agreement_probability(const FunctionFamily& f, const Rat& zeta) {
  const uint32_t k = f.k();
  const uint32_t cut = consistency_cutoff(zeta, f.n);
  uint64_t consistent = k;  // diagonal
  for (uint32_t i = 0; i < k; ++i)
    for (uint32_t j = i + 1; j < k; ++j)
      if (disagreement(f, i, j) <= cut) consistent += 2;
  return Rat(consistent, static_cast<uint64_t>(k) * k);
}

RedBlueGraph build_consistency_graph(const FunctionFamily& f, const Rat& zeta,
                                     const Rat& zeta_prime) {
  std::vector<uint32_t> all(f.k());
  std::iota(all.begin(), all.end(), 0);
  return build_consistency_graph(f, zeta, zeta_prime, all);
}

RedBlueGraph build_consistency_graph(const FunctionFamily& f, const Rat& zeta,
                                     const Rat& zeta_prime,
                                     const std::vector<uint32_t>& members) {
  if (zeta > zeta_prime) throw Error("graph needs zeta <= zeta'");
  const uint32_t blue_cut = consistency_cutoff(zeta, f.n);
  const uint32_t red_cut = consistency_cutoff(zeta_prime, f.n);
  const uint32_t km = static_cast<uint32_t>(members.size());
  RedBlueGraph g(km);
  for (uint32_t a = 0; a < km; ++a)
    for (uint32_t b = a + 1; b < km; ++b) {
      uint32_t d = disagreement(f, members[a], members[b]);
      if (d <= blue_cut)
        g.add_blue(a, b);
      else if (d > red_cut)
        g.add_red(a, b);
      // else: neither color
    }
  return g;
}

Bitset majority_decode(const FunctionFamily& f,
                       const std::vector<uint32_t>& sub,
                       uint32_t* uncovered_out) {
  if (sub.empty()) throw Error("majority_decode: empty subcollection");
  std::vector<uint32_t> cover(f.n, 0), ones(f.n, 0);
  for (uint32_t i : sub) {
    const Bitset& s = f.supports.sets[i];
    const Bitset& v = f.values[i];
    for (uint32_t x : s.elements()) {
      cover[x]++;
      ones[x] += v.test(x);
    }
  }
  Bitset g(f.n);
  uint32_t uncovered = 0;
  for (uint32_t x = 0; x < f.n; ++x) {
    if (cover[x] == 0) {
      ++uncovered;  // decodes to 0
      continue;
    }
    if (2 * ones[x] > cover[x]) g.set(x);  // ties decode to 0
  }
  if (uncovered_out) *uncovered_out = uncovered;
  return g;
}

Rat mean_disagreement(const FunctionFamily& f, const std::vector<uint32_t>& sub,
                      const Bitset& g) {
  if (sub.empty()) throw Error("mean_disagreement: empty subcollection");
  uint64_t total = 0;
  for (uint32_t i : sub)
    total += disa_count(f.supports.sets[i], g, f.supports.sets[i], f.values[i]);
  return Rat(total, sub.size());
}

bool meets_agreement_threshold(const Rat& delta, uint32_t k, uint32_t r,
                               uint32_t ell) {
  Rat lhs = delta * k - 10;
  if (lhs < 0) return false;
  Rat denom = Rat(64) * r * r * ell * ell;
  return rat_pow(lhs / denom, ell) >= Rat(k);
}

namespace {

// Pick `want` distinct members of pool (given as vertex ids), seeded.
std::vector<uint32_t> pick_subset(const std::vector<uint32_t>& pool,
                                  uint32_t want, Rng& rng) {
  std::vector<uint32_t> idx =
      rng.sample_distinct(static_cast<uint32_t>(pool.size()), want);
  std::vector<uint32_t> out;
  out.reserve(want);
  for (uint32_t i : idx) out.push_back(pool[i]);
  return out;
}

struct SubsetSelection {
  std::vector<uint32_t> u1, u2;
  uint64_t nonred = 0;
  bool met = false;
};

// Find size-d subsets of u1pool x u2pool with non-red ordered-pair count
// >= d^2 / ell^2. Randomized with retries, exhaustive for small pools.
SubsetSelection select_exact_subsets(const RedBlueGraph& g,
                                     const std::vector<uint32_t>& u1pool,
                                     const std::vector<uint32_t>& u2pool,
                                     uint32_t d, uint32_t ell,
                                     const DecodeOptions& opts) {
  SubsetSelection best;
  Rng rng(opts.seed ^ 0x5b5b5b5bULL);
  const uint64_t target_num = static_cast<uint64_t>(d) * d;  // cnt*ell^2 >= d^2
  auto score = [&](const std::vector<uint32_t>& a,
                   const std::vector<uint32_t>& b) {
    return non_red_pairs(g, a, b);
  };
  for (uint32_t t = 0; t < opts.subset_retries; ++t) {
    std::vector<uint32_t> a = pick_subset(u1pool, d, rng);
    std::vector<uint32_t> b = pick_subset(u2pool, d, rng);
    uint64_t s = score(a, b);
    if (s > best.nonred || best.u1.empty()) {
      best = {a, b, s, false};
    }
    if (s * ell * ell >= target_num) {
      best = {std::move(a), std::move(b), s, true};
      return best;
    }
  }
  // Exhaustive fallback for tiny pools.
  uint64_t combos = 1;
  for (uint32_t i = 0; i < d; ++i) {
    combos = combos * (u1pool.size() - i) / (i + 1);
    if (combos > opts.exhaustive_cap) return best;
  }
  if (combos * combos > opts.exhaustive_cap) return best;
  std::vector<uint32_t> ca(d), cb(d);
  auto comb_next = [](std::vector<uint32_t>& c, size_t n) {
    size_t i = c.size();
    while (i > 0) {
      --i;
      if (c[i] + 1 <= n - (c.size() - i)) {
        ++c[i];
        for (size_t j = i + 1; j < c.size(); ++j) c[j] = c[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  std::iota(ca.begin(), ca.end(), 0);
  do {
    std::vector<uint32_t> a(d);
    for (uint32_t i = 0; i < d; ++i) a[i] = u1pool[ca[i]];
    std::iota(cb.begin(), cb.end(), 0);
    do {
      std::vector<uint32_t> b(d);
      for (uint32_t i = 0; i < d; ++i) b[i] = u2pool[cb[i]];
      uint64_t s = score(a, b);
      if (s > best.nonred) best = {a, b, s, false};
      if (s * ell * ell >= target_num) {
        best = {a, b, s, true};
        return best;
      }
    } while (comb_next(cb, u2pool.size()));
  } while (comb_next(ca, u1pool.size()));
  return best;
}

}  // namespace

DecodeResult agreement_decode(const FunctionFamily& f, const DecodeParams& p,
                              const DecodeOptions& opts) {
  f.validate();
  if (p.ell < 2) throw Error("decode: ell >= 2");
  if (p.gamma <= 0) throw Error("decode: gamma > 0 required");
  const uint32_t k = f.k();
  const uint32_t n = f.n;
  if (k < 2) throw Error("decode: k >= 2");

  DecodeResult res;
  res.zeta_prime = p.zeta_prime();
  res.q0 = int_pow(static_cast<uint64_t>(p.r) * p.ell, 2 * (p.ell - 1));

  // Stage 1: two-level consistency graph and measured agreement.
  RedBlueGraph g1 = build_consistency_graph(f, Rat(0), p.zeta);
  res.delta = Rat(2 * g1.blue_edge_count() + k, static_cast<uint64_t>(k) * k);
  res.below_threshold = !meets_agreement_threshold(res.delta, k, p.r, p.ell);
  if (res.below_threshold && !opts.best_effort) {
    res.warnings.push_back("declined: agr(F) below the decoder threshold");
    return res;  // success stays false; delta and the flag are the report
  }
  const bool strict_guarantees = !res.below_threshold;

  auto degrade = [&](const std::string& what) {
    if (strict_guarantees)
      throw StageFailure("decode", what + " despite threshold being met");
    res.warnings.push_back(what);
  };

  // Stage 2: d = floor(|E_b| / 2k) = floor((delta k - 1)/4).
  uint64_t d = g1.blue_edge_count() / (2 * k);
  if (d == 0) {
    degrade("d = 0; clamped to 1");
    d = 1;
  }
  res.d = d;

  // Stage 3: dense pair of neighborhoods in the two-level graph.
  std::vector<uint32_t> u1pool, u2pool;
  try {
    DenseSubgraphs ds = find_dense_subgraphs(
        g1, res.q0, p.ell, static_cast<uint32_t>(d));
    u1pool = std::move(ds.u1);
    u2pool = std::move(ds.u2);
    res.tau1 = ds.density;
  } catch (const StageFailure& e) {
    degrade(std::string("stage-3 dense subgraph failed: ") + e.what());
    u1pool.resize(k);
    std::iota(u1pool.begin(), u1pool.end(), 0);
    u2pool = u1pool;
  }

  // Stage 4: subsets of size exactly d with non-red fraction >= 1/ell^2.
  uint32_t d_sel = static_cast<uint32_t>(d);
  if (u1pool.size() < d_sel || u2pool.size() < d_sel) {
    degrade("pool smaller than d; selection size clamped");
    d_sel = static_cast<uint32_t>(std::min(u1pool.size(), u2pool.size()));
  }
  SubsetSelection sel =
      select_exact_subsets(g1, u1pool, u2pool, d_sel, p.ell, opts);
  if (!sel.met)
    degrade("subset selection missed the 1/ell^2 non-red target");

  // Stage 5: generalized graph on the union.
  std::vector<uint32_t> tu = sel.u1;
  tu.insert(tu.end(), sel.u2.begin(), sel.u2.end());
  std::sort(tu.begin(), tu.end());
  tu.erase(std::unique(tu.begin(), tu.end()), tu.end());
  RedBlueGraph g2 = build_consistency_graph(f, p.zeta, res.zeta_prime, tu);

  // Stage 6: d' and the second extraction with q0 = h, ell0 = 2.
  uint64_t d_prime = g2.blue_edge_count() / (2 * tu.size());
  if (d_prime == 0) {
    degrade("d' = 0; clamped to 1");
    d_prime = 1;
  }
  res.d_prime = d_prime;
  std::vector<uint32_t> uprime;  // positions within tu
  try {
    DenseSubgraphs ds2 = find_dense_subgraphs(
        g2, Int(p.h), 2, static_cast<uint32_t>(d_prime));
    uprime = std::move(ds2.u1);  // ell0 = 2 forces u1 == u2
  } catch (const StageFailure& e) {
    degrade(std::string("stage-6 dense subgraph failed: ") + e.what());
    uprime.resize(tu.size());
    std::iota(uprime.begin(), uprime.end(), 0);
  }
  res.subcollection.reserve(uprime.size());
  for (uint32_t pos : uprime) res.subcollection.push_back(tu[pos]);

  // Stage 7: majority decode and the measured quantities.
  res.global = majority_decode(f, res.subcollection, &res.uncovered);
  res.mean_disa = mean_disagreement(f, res.subcollection, res.global);

  // kappa = 1 - agr_{zeta'} over U' (ordered pairs incl. diagonal).
  {
    const uint32_t cut = consistency_cutoff(res.zeta_prime, n);
    uint64_t su = res.subcollection.size();
    uint64_t consistent = su;
    for (size_t a = 0; a < res.subcollection.size(); ++a)
      for (size_t b = a + 1; b < res.subcollection.size(); ++b)
        if (disagreement(f, res.subcollection[a], res.subcollection[b]) <= cut)
          consistent += 2;
    res.kappa = Rat(1) - Rat(consistent, su * su);
  }

  res.size_bound = res.delta * k / (Rat(128) * p.ell * p.ell);
  res.markov_bound = res.delta * k / (Rat(256) * p.ell * p.ell);
  Rat radicand = Rat(65536) * p.h * int_pow(p.ell, 6) / (res.delta * k) +
                 p.mu + 2 * p.zeta / p.gamma;
  res.mean_bound_sq = Rat(n) * n * radicand;
  res.beta_sq = Rat(4) * radicand;

  // Per-member beta bound: disa(g, f_i) <= beta*n  <=>  disa^2 <= n^2*beta^2.
  Rat beta_n_sq = res.beta_sq * n * n;
  for (uint32_t i : res.subcollection) {
    uint64_t di = disa_count(f.supports.sets[i], res.global,
                             f.supports.sets[i], f.values[i]);
    if (Rat(di) * di <= beta_n_sq) res.beta_close_count++;
  }

  res.success = true;
  return res;
}

DisjointWalkReport check_claim_disjoint_walks(const FunctionFamily& f,
                                              const Rat& zeta, uint32_t r,
                                              uint32_t ell, uint64_t cap) {
  if (r == 0 || ell < 2) throw Error("disjoint-walk check: r >= 1, ell >= 2");
  RedBlueGraph g = build_consistency_graph(f, Rat(0), zeta);
  DisjointWalkReport rep;
  const uint32_t k = g.k();
  uint64_t work = 0;

  for (auto [u, v] : g.red_edges()) {
    for (uint32_t p = 2; p <= ell; ++p) {
      // All blue p-walks u -> v, interiors recorded as vertex sets.
      std::vector<Bitset> interiors;
      std::vector<uint32_t> walk{u};
      auto dfs = [&](auto&& self) -> void {
        if (walk.size() == p) {
          if (!g.blue(walk.back(), v)) return;
          Bitset interior(k);
          for (size_t i = 1; i < walk.size(); ++i) interior.set(walk[i]);
          interiors.push_back(std::move(interior));
          return;
        }
        for (uint32_t w : g.blue_row(walk.back()).elements()) {
          if (++work > cap)
            throw CapExceeded("disjoint-walk check: walk enumeration cap");
          walk.push_back(w);
          self(self);
          walk.pop_back();
        }
      };
      dfs(dfs);

      // Exactly r pairwise disjoint walks? Subset scan with pruning.
      uint32_t found = 0;
      std::vector<size_t> chosen;
      auto pick = [&](auto&& self, size_t from, Bitset used) -> bool {
        if (chosen.size() == r) return true;
        for (size_t i = from; i < interiors.size(); ++i) {
          if (interiors.size() - i < r - chosen.size()) return false;
          if (and_count(interiors[i], used)) continue;
          if (++work > cap)
            throw CapExceeded("disjoint-walk check: packing search cap");
          chosen.push_back(i);
          Bitset u2 = used | interiors[i];
          if (self(self, i + 1, u2)) return true;
          chosen.pop_back();
        }
        return false;
      };
      Bitset none(k);
      if (pick(pick, 0, none)) {
        // r disjoint walks exist; measure the packing greedily for the report.
        found = r;
        rep.pass = false;
        rep.violations.push_back({u, v, p, found});
      }
    }
  }
  return rep;
}

uint32_t max_consistent_members(const FunctionFamily& f, const Rat& beta) {
  if (f.n > 24) throw CapExceeded("max_consistent_members: n <= 24");
  const uint32_t cut = consistency_cutoff(beta, f.n);
  const uint32_t k = f.k();
  std::vector<uint32_t> supp(k), vals(k);
  for (uint32_t i = 0; i < k; ++i) {
    supp[i] = static_cast<uint32_t>(f.supports.sets[i].word(0));
    vals[i] = static_cast<uint32_t>(f.values[i].word(0));
  }
  uint32_t best = 0;
  for (uint32_t g = 0; g < (1u << f.n); ++g) {
    uint32_t close = 0;
    for (uint32_t i = 0; i < k; ++i)
      if (static_cast<uint32_t>(std::popcount((g ^ vals[i]) & supp[i])) <= cut)
        ++close;
    best = std::max(best, close);
  }
  return best;
}

}  // namespace redkit

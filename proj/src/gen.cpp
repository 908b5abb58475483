#include "redkit/gen.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace redkit::gen {

PlantedCnf gen_planted(uint32_t num_vars, uint32_t num_clauses, uint32_t delta,
                       uint64_t seed) {
  if (delta < 1) throw Error("gen_planted: delta >= 1");
  if (num_vars < 3) throw Error("gen_planted: need at least 3 variables");
  if (static_cast<uint64_t>(delta) * num_vars < 3ULL * num_clauses)
    throw Infeasible("gen_planted: delta * vars < 3 * clauses");

  Rng rng(seed);
  for (uint32_t attempt = 0; attempt < 64; ++attempt) {
    Rng r = rng.fork(attempt);
    Bitset psi(num_vars);
    for (uint32_t v = 0; v < num_vars; ++v)
      if (r.bernoulli(1, 2)) psi.set(v);

    std::vector<uint32_t> occ(num_vars, 0);
    std::vector<std::vector<int>> raw;
    bool ok = true;
    for (uint32_t c = 0; c < num_clauses && ok; ++c) {
      std::vector<uint32_t> avail;
      for (uint32_t v = 0; v < num_vars; ++v)
        if (occ[v] < delta) avail.push_back(v);
      if (avail.size() < 3) {
        ok = false;
        break;
      }
      std::vector<uint32_t> pick = r.sample_distinct(
          static_cast<uint32_t>(avail.size()), 3);
      std::vector<int> clause;
      for (uint32_t idx : pick) {
        uint32_t v = avail[idx];
        occ[v]++;
        bool neg = r.bernoulli(1, 2);
        clause.push_back(neg ? -(int)(v + 1) : (int)(v + 1));
      }
      bool sat = false;
      for (int lit : clause) {
        uint32_t v = static_cast<uint32_t>(std::abs(lit)) - 1;
        if (psi.test(v) != (lit < 0)) sat = true;
      }
      if (!sat) {
        // flip one literal's sign so the planted assignment satisfies it
        size_t j = r.below(3);
        clause[j] = -clause[j];
      }
      raw.push_back(std::move(clause));
    }
    if (!ok) continue;

    std::vector<uint32_t> var_map;
    CnfFormula f = normalize_formula(num_vars, raw, &var_map);
    Assignment planted{Bitset(f.num_vars)};
    for (uint32_t v = 0; v < num_vars; ++v)
      if (var_map[v] != UINT32_MAX && psi.test(v)) planted.bits.set(var_map[v]);
    return {std::move(f), std::move(planted)};
  }
  throw Infeasible("gen_planted: occupancy retries exhausted");
}

SetSystem bounded_complement_supports(uint32_t n, uint32_t k,
                                      uint32_t comp_size, uint64_t seed) {
  if (comp_size >= n) throw Error("complement size must be < n");
  Rng rng(seed);
  SetSystem s;
  s.universe_size = n;
  for (uint32_t i = 0; i < k; ++i) {
    Bitset b(n);
    b.set_all();
    for (uint32_t x : rng.sample_distinct(n, comp_size)) b.reset(x);
    s.sets.push_back(std::move(b));
  }
  return s;
}

FunctionFamily family_from_global(const SetSystem& supports,
                                  const Bitset& global) {
  FunctionFamily f;
  f.n = supports.universe_size;
  f.supports = supports;
  for (const Bitset& s : supports.sets) f.values.push_back(global & s);
  return f;
}

PlantedFamily planted_noisy_family(const SetSystem& supports, uint32_t noisy,
                                   uint32_t noisy_flips, uint32_t grey,
                                   uint32_t grey_flips, uint64_t seed) {
  Rng rng(seed);
  const uint32_t n = supports.universe_size;
  Bitset global(n);
  for (uint32_t x = 0; x < n; ++x)
    if (rng.bernoulli(1, 2)) global.set(x);

  PlantedFamily out;
  out.global = global;
  out.family = family_from_global(supports, global);

  const uint32_t k = supports.k();
  if (noisy + grey > k) throw Error("more perturbed members than members");
  std::vector<uint32_t> order = rng.sample_distinct(k, noisy + grey);
  rng.shuffle(order);
  auto perturb = [&](uint32_t i, uint32_t flips) {
    std::vector<uint32_t> elems = supports.sets[i].elements();
    if (elems.empty()) return;
    flips = std::min<uint32_t>(flips, static_cast<uint32_t>(elems.size()));
    // distinct positions, so the perturbation size is exactly `flips`
    for (uint32_t p : rng.sample_distinct(
             static_cast<uint32_t>(elems.size()), flips))
      out.family.values[i].flip(elems[p]);
  };
  for (uint32_t j = 0; j < noisy; ++j) {
    perturb(order[j], noisy_flips);
    out.noisy.push_back(order[j]);
  }
  for (uint32_t j = noisy; j < noisy + grey; ++j) perturb(order[j], grey_flips);
  std::sort(out.noisy.begin(), out.noisy.end());
  return out;
}

FunctionFamily random_family(uint32_t n, uint32_t k, double alpha,
                             uint64_t seed) {
  Rng rng(seed);
  FunctionFamily f;
  f.n = n;
  f.supports = sample_random(n, k, alpha, rng.next());
  for (uint32_t i = 0; i < k; ++i) {
    Bitset v(n);
    for (uint32_t x : f.supports.sets[i].elements())
      if (rng.bernoulli(1, 2)) v.set(x);
    f.values.push_back(std::move(v));
  }
  return f;
}

FunctionFamily block_planted_family(uint32_t n, uint32_t k, uint32_t groups,
                                    double alpha, uint64_t seed) {
  if (groups == 0 || groups > k) throw Error("groups must be in 1..k");
  Rng rng(seed);
  FunctionFamily f;
  f.n = n;
  f.supports = sample_random(n, k, alpha, rng.next());
  std::vector<Bitset> globals;
  for (uint32_t g = 0; g < groups; ++g) {
    Bitset b(n);
    for (uint32_t x = 0; x < n; ++x)
      if (rng.bernoulli(1, 2)) b.set(x);
    globals.push_back(std::move(b));
  }
  for (uint32_t i = 0; i < k; ++i)
    f.values.push_back(globals[i * groups / k] & f.supports.sets[i]);
  return f;
}

RedBlueGraph clique_union_graph(uint32_t cliques, uint32_t clique_size,
                                double red_p, uint32_t bridges,
                                uint64_t seed) {
  Rng rng(seed);
  const uint32_t k = cliques * clique_size;
  RedBlueGraph g(k);
  auto clique_of = [&](uint32_t v) { return v / clique_size; };
  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v)
      if (clique_of(u) == clique_of(v)) g.add_blue(u, v);
  for (uint32_t b = 0; b < bridges; ++b) {
    uint32_t u = static_cast<uint32_t>(rng.below(k));
    uint32_t v = static_cast<uint32_t>(rng.below(k));
    if (u != v && clique_of(u) != clique_of(v) && !g.blue(u, v) &&
        !g.red(u, v))
      g.add_blue(u, v);
  }
  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v)
      if (clique_of(u) != clique_of(v) && !g.blue(u, v) &&
          rng.bernoulli(red_p))
        g.add_red(u, v);
  return g;
}

RedBlueGraph random_redblue(uint32_t k, double blue_p, double red_p,
                            uint64_t seed) {
  Rng rng(seed);
  RedBlueGraph g(k);
  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v) {
      if (rng.bernoulli(blue_p))
        g.add_blue(u, v);
      else if (rng.bernoulli(red_p))
        g.add_red(u, v);
    }
  return g;
}

Csp2Instance random_csp(uint32_t k, uint32_t max_alphabet, bool allow_empty,
                        uint64_t seed) {
  Rng rng(seed);
  Csp2Instance inst;
  inst.k = k;
  for (uint32_t i = 0; i < k; ++i)
    inst.alphabet_sizes.push_back(
        1 + static_cast<uint32_t>(rng.below(max_alphabet)));
  inst.constraints.resize(inst.num_edges());
  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v) {
      EdgeConstraint con;
      con.keyed = false;
      for (;;) {
        con.rows.assign(inst.alphabet_sizes[u],
                        Bitset(inst.alphabet_sizes[v]));
        uint64_t bits = 0;
        for (auto& row : con.rows)
          for (uint32_t b = 0; b < row.size(); ++b)
            if (rng.bernoulli(1, 2)) {
              row.set(b);
              ++bits;
            }
        if (bits > 0 || allow_empty) break;
      }
      inst.constraints[inst.edge_index(u, v)] = std::move(con);
    }
  return inst;
}

uint64_t for_each_csp(const std::vector<uint32_t>& alphabet_sizes,
                      const std::function<void(const Csp2Instance&)>& fn) {
  const uint32_t k = static_cast<uint32_t>(alphabet_sizes.size());
  Csp2Instance base;
  base.k = k;
  base.alphabet_sizes = alphabet_sizes;
  base.constraints.resize(base.num_edges());

  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::vector<uint32_t> pair_bits;
  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v) {
      edges.push_back({u, v});
      pair_bits.push_back(alphabet_sizes[u] * alphabet_sizes[v]);
    }

  uint64_t count = 0;
  std::vector<uint64_t> code(edges.size(), 0);
  for (;;) {
    for (size_t e = 0; e < edges.size(); ++e) {
      auto [u, v] = edges[e];
      EdgeConstraint con;
      con.keyed = false;
      con.rows.assign(alphabet_sizes[u], Bitset(alphabet_sizes[v]));
      for (uint32_t a = 0; a < alphabet_sizes[u]; ++a)
        for (uint32_t b = 0; b < alphabet_sizes[v]; ++b)
          if ((code[e] >> (a * alphabet_sizes[v] + b)) & 1) con.rows[a].set(b);
      base.constraints[base.edge_index(u, v)] = std::move(con);
    }
    fn(base);
    ++count;
    // odometer
    size_t e = 0;
    while (e < edges.size()) {
      if (++code[e] < (1ULL << pair_bits[e])) break;
      code[e] = 0;
      ++e;
    }
    if (e == edges.size()) break;
  }
  return count;
}

}  // namespace redkit::gen

#include "redkit/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace redkit {

namespace {

// Derived parameters shared by both instantiation routes. alpha arrives as an
// exact rational snapshot; everything after it is exact rational arithmetic
// except the two ceilings, which are integer-valued.
void fill_derived(ReductionParams& p) {
  p.gamma = p.alpha / 2;
  Rat d3 = Rat(p.delta_bound) * p.delta_bound * p.delta_bound;
  p.mu = p.eps * p.eps * p.gamma * p.gamma / (288 * d3);
  p.zeta = p.eps * p.eps * p.gamma * p.gamma * p.gamma / (432 * d3);

  long double alpha = static_cast<long double>(rat_double(p.alpha));
  long double zeta = static_cast<long double>(rat_double(p.zeta));
  long double mu = static_cast<long double>(rat_double(p.mu));
  long double r_real =
      std::log(2.0L / zeta) / std::pow(alpha, static_cast<long double>(p.ell));
  long double h_real = 8.0L * std::log(2.0L / mu) / alpha;
  if (r_real > 1e15L || h_real > 1e15L)
    throw Infeasible("instantiation: r or h overflows the desk-scale range");
  p.r = static_cast<uint32_t>(std::ceil(r_real));
  p.h = static_cast<uint32_t>(std::ceil(h_real));
}

}  // namespace

ReductionParams instantiate_params_eth(uint64_t m, uint32_t c, const Rat& eps,
                                       uint32_t delta_bound) {
  if (m < 2) throw Error("instantiate: m >= 2");
  ReductionParams p;
  p.eps = eps;
  p.delta_bound = delta_bound;
  p.c = c;
  long double lm = std::log2(static_cast<long double>(m));
  p.alpha = rat_from_double(
      static_cast<double>(1.0L / std::pow(lm, static_cast<long double>(c + 1))));
  uint32_t ell = static_cast<uint32_t>(std::floor(std::pow(lm, 0.25L)));
  p.ell = std::max<uint32_t>(2, ell);
  if (static_cast<uint64_t>(p.ell) * p.ell > 62)
    throw Infeasible("instantiate: 2^(ell^2) out of desk range");
  p.k_sets = Int(1) << (p.ell * p.ell);
  fill_derived(p);
  return p;
}

ReductionParams instantiate_params_gap_eth(const Int& k, const Rat& eps,
                                           uint32_t delta_bound) {
  if (k < 4) throw Infeasible("instantiate: k too small (ell < 2)");
  ReductionParams p;
  p.eps = eps;
  p.delta_bound = delta_bound;
  long double lk = std::log2(static_cast<long double>(k));
  uint32_t ell = static_cast<uint32_t>(std::floor(std::sqrt(lk)));
  if (ell < 2) throw Infeasible("instantiate: k too small (ell < 2)");
  p.ell = ell;
  long double llk = std::log2(lk);
  if (llk <= 1.0L) throw Infeasible("instantiate: alpha would be >= 1");
  p.alpha = rat_from_double(static_cast<double>(1.0L / llk));
  p.k_sets = k;
  fill_derived(p);
  return p;
}

ReductionArtifact build_2csp(const CnfFormula& f, const SetSystem& clause_sets,
                             uint32_t var_cap) {
  if (clause_sets.universe_size != f.num_clauses())
    throw Error("build_2csp: set system universe must be the clause set");
  const uint32_t k = clause_sets.k();
  ReductionArtifact art;
  art.formula = f;
  art.clause_sets = clause_sets;
  art.var_sets.universe_size = f.num_vars;

  art.instance.k = k;
  art.instance.alphabet_sizes.assign(k, 0);

  for (uint32_t i = 0; i < k; ++i) {
    std::vector<uint32_t> t = clause_sets.sets[i].elements();
    Bitset vars = clause_vars(f, t);
    art.var_sets.sets.push_back(vars);
    std::vector<uint32_t> vs = vars.elements();  // ascending
    const uint32_t w = static_cast<uint32_t>(vs.size());
    if (w > var_cap)
      throw CapExceeded("build_2csp: |var(T_" + std::to_string(i) +
                        ")| = " + std::to_string(w) + " exceeds cap");
    std::vector<Bitset> labs;
    std::vector<uint64_t> codes;
    for (uint64_t code = 0; code < (1ULL << w); ++code) {
      Bitset bits(f.num_vars);
      for (uint32_t j = 0; j < w; ++j)
        if ((code >> (w - 1 - j)) & 1) bits.set(vs[j]);
      bool ok = true;
      for (uint32_t ci : t)
        if (!clause_satisfied(f.clauses[ci], bits)) {
          ok = false;
          break;
        }
      if (ok) {
        labs.push_back(std::move(bits));
        codes.push_back(code);
      }
    }
    art.instance.alphabet_sizes[i] = static_cast<uint32_t>(labs.size());
    art.vertex_vars.push_back(std::move(vs));
    art.labels.push_back(std::move(labs));
    art.label_codes.push_back(std::move(codes));
  }
  for (uint32_t s : art.instance.alphabet_sizes)
    if (s == 0) art.instance.unsat_trivial = true;

  // Constraints: labels agree on the shared variables iff their restrictions
  // to the overlap coincide; one packed key per label per edge side.
  art.instance.constraints.resize(art.instance.num_edges());
  for (uint32_t u = 0; u < k; ++u)
    for (uint32_t v = u + 1; v < k; ++v) {
      Bitset overlap = art.var_sets.sets[u] & art.var_sets.sets[v];
      std::vector<uint32_t> ox = overlap.elements();
      if (ox.size() > 64)
        throw CapExceeded("build_2csp: overlap exceeds 64 variables");
      auto pack = [&](const Bitset& bits) {
        uint64_t key = 0;
        for (size_t j = 0; j < ox.size(); ++j)
          if (bits.test(ox[j])) key |= 1ULL << j;
        return key;
      };
      EdgeConstraint con;
      con.keyed = true;
      for (const Bitset& lab : art.labels[u]) con.key_u.push_back(pack(lab));
      for (const Bitset& lab : art.labels[v]) con.key_v.push_back(pack(lab));
      art.instance.constraints[art.instance.edge_index(u, v)] = std::move(con);
    }
  art.instance.validate();
  return art;
}

Labeling labeling_from_assignment(const ReductionArtifact& a,
                                  const Assignment& psi) {
  const uint32_t k = a.instance.k;
  Labeling lab(k);
  for (uint32_t i = 0; i < k; ++i) {
    const auto& vs = a.vertex_vars[i];
    const uint32_t w = static_cast<uint32_t>(vs.size());
    uint64_t code = 0;
    for (uint32_t j = 0; j < w; ++j)
      if (psi.bits.test(vs[j])) code |= 1ULL << (w - 1 - j);
    const auto& codes = a.label_codes[i];
    auto it = std::lower_bound(codes.begin(), codes.end(), code);
    if (it == codes.end() || *it != code)
      throw Error("assignment does not satisfy the clauses of vertex " +
                  std::to_string(i));
    lab[i] = static_cast<uint32_t>(it - codes.begin());
  }
  return lab;
}

FunctionFamily family_from_labeling(const ReductionArtifact& a,
                                    const Labeling& lab) {
  if (lab.size() != a.instance.k) throw Error("labeling size mismatch");
  FunctionFamily fam;
  fam.n = a.formula.num_vars;
  fam.supports = a.var_sets;
  for (uint32_t i = 0; i < a.instance.k; ++i) {
    if (lab[i] >= a.labels[i].size()) throw Error("label out of range");
    fam.values.push_back(a.labels[i][lab[i]]);
  }
  return fam;
}

bool meets_soundness_threshold(const Rat& delta, uint32_t k,
                               const ReductionParams& p) {
  Rat lhs = delta * k - 10 -
            Rat(65536) * p.h * p.ell * p.ell / p.mu;
  if (lhs < 0) return false;
  Rat denom = Rat(64) * p.r * p.r * p.ell * p.ell;
  return rat_pow(lhs / denom, p.ell) >= Rat(k);
}

DecodeAssignmentResult decode_assignment(const ReductionArtifact& a,
                                         const Labeling& lab, uint64_t seed) {
  if (!a.has_params) throw Error("decode_assignment: artifact lacks params");
  const ReductionParams& p = a.params;
  FunctionFamily fam = family_from_labeling(a, lab);
  const uint32_t k = fam.k();
  const uint32_t n = fam.n;

  DecodeAssignmentResult out;
  DecodeAssignmentReport& rep = out.report;

  DecodeParams dp{p.zeta, p.ell, p.r, p.h, p.gamma, p.mu};
  DecodeOptions dop;
  dop.best_effort = true;
  dop.seed = seed;
  DecodeResult dec = agreement_decode(fam, dp, dop);

  rep.agr = dec.delta;
  rep.below_threshold = !meets_soundness_threshold(dec.delta, k, p);
  rep.warnings = dec.warnings;
  rep.sprime_size = static_cast<uint32_t>(dec.subcollection.size());

  // T* = the h members of S' with the smallest disagreement against g.
  std::vector<std::pair<uint64_t, uint32_t>> ranked;
  for (uint32_t i : dec.subcollection) {
    uint64_t di = disa_count(fam.supports.sets[i], dec.global,
                             fam.supports.sets[i], fam.values[i]);
    ranked.push_back({di, i});
  }
  std::sort(ranked.begin(), ranked.end());
  uint32_t take = p.h;
  if (ranked.size() < take) {
    take = static_cast<uint32_t>(ranked.size());
    rep.warnings.push_back("S' smaller than h; T* truncated");
  }
  uint64_t disa_sum = 0;
  for (uint32_t i = 0; i < take; ++i) {
    rep.tstar.push_back(ranked[i].second);
    disa_sum += ranked[i].first;
  }
  std::sort(rep.tstar.begin(), rep.tstar.end());

  rep.nu = Rat(disa_sum) / (Rat(take) * n);
  rep.bound = Rat(1) - p.mu -
              Rat(3) * rep.nu * a.formula.occurrence_bound / p.gamma;
  rep.tstar_uniform_certified =
      check_uniform_sub(a.clause_sets, rep.tstar, p.gamma, p.mu);
  rep.uncovered = dec.uncovered;

  out.assignment.bits = dec.global;  // majority fills uncovered with 0
  rep.eval = eval_fraction(a.formula, out.assignment);
  rep.decoded = dec.success;
  return out;
}

TranslationReport check_set_translation(const ReductionArtifact& a, uint32_t r,
                                        uint32_t ell, const Rat& eta,
                                        uint32_t h, const Rat& gamma,
                                        const Rat& mu) {
  const uint32_t delta = a.formula.occurrence_bound;
  TranslationReport rep;
  rep.clause_uniform = check_uniform(a.clause_sets, gamma, mu);
  rep.var_uniform = check_uniform(a.var_sets, gamma, Rat(3) * delta * mu);
  rep.uniform_implication = !rep.clause_uniform || rep.var_uniform;

  rep.clause_h_uniform =
      check_all_subcollections_uniform(a.clause_sets, h, gamma, mu);
  rep.var_h_uniform = check_all_subcollections_uniform(
      a.var_sets, h, gamma, Rat(3) * delta * mu);
  rep.h_uniform_implication = !rep.clause_h_uniform || rep.var_h_uniform;

  rep.clause_disperser = check_disperser_enumerate(a.clause_sets, r, ell, eta);
  rep.var_disperser =
      check_disperser_enumerate(a.var_sets, r, ell, Rat(3) * delta * eta);
  rep.disperser_implication = !rep.clause_disperser || rep.var_disperser;

  rep.pass = rep.uniform_implication && rep.h_uniform_implication &&
             rep.disperser_implication;
  if (!rep.pass) rep.detail = "translation implication violated";
  return rep;
}

}  // namespace redkit

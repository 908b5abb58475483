#include "redkit/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace redkit {

Rat rat_parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw Error("bad rational literal: " + s);
  }
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw Error("non-finite value");
  if (x == 0.0) return Rat(0);
  bool neg = x < 0;
  if (neg) x = -x;
  int exp;
  double mant = std::frexp(x, &exp);  // x = mant * 2^exp, mant in [0.5, 1)
  Int num = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rat r(num);
  if (exp > 0)
    r *= rat_pow(Rat(2), exp);
  else if (exp < 0)
    r /= rat_pow(Rat(2), -exp);
  return neg ? -r : r;
}

std::string bits_to_string(const Bitset& b) {
  std::string s(b.size(), '0');
  for (uint32_t i = 0; i < b.size(); ++i)
    if (b.test(i)) s[i] = '1';
  return s;
}

Bitset bits_from_string(const std::string& s) {
  Bitset b(static_cast<uint32_t>(s.size()));
  for (uint32_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b.set(i);
    else if (s[i] != '0')
      throw Error("bad bit string");
  }
  return b;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

Json rj(const Rat& r) { return rat_str(r); }
Rat jr(const Json& j) { return rat_parse(j.get<std::string>()); }

}  // namespace

Json to_json(const CnfFormula& f) {
  Json j;
  j["version"] = 1;
  j["type"] = "cnf";
  j["num_vars"] = f.num_vars;
  Json cl = Json::array();
  for (const Clause& c : f.clauses) {
    Json lits = Json::array();
    for (const Lit& l : c)
      lits.push_back(l.neg ? -(int)(l.var + 1) : (int)(l.var + 1));
    cl.push_back(lits);
  }
  j["clauses"] = cl;
  j["occurrence_bound"] = f.occurrence_bound;
  return j;
}

CnfFormula formula_from_json(const Json& j) {
  std::vector<std::vector<int>> raw;
  for (const Json& c : j.at("clauses")) raw.push_back(c.get<std::vector<int>>());
  return normalize_formula(j.at("num_vars").get<uint32_t>(), raw);
}

Json to_json(const Assignment& a) {
  Json j;
  j["version"] = 1;
  j["type"] = "assignment";
  j["bits"] = bits_to_string(a.bits);
  return j;
}

Assignment assignment_from_json(const Json& j) {
  return {bits_from_string(j.at("bits").get<std::string>())};
}

Json to_json(const SetSystem& s) {
  Json j;
  j["version"] = 1;
  j["type"] = "set_system";
  j["universe_size"] = s.universe_size;
  Json sets = Json::array();
  for (const Bitset& b : s.sets) sets.push_back(b.elements());
  j["sets"] = sets;
  return j;
}

SetSystem setsystem_from_json(const Json& j) {
  SetSystem s;
  s.universe_size = j.at("universe_size").get<uint32_t>();
  for (const Json& set : j.at("sets")) {
    Bitset b(s.universe_size);
    for (uint32_t e : set.get<std::vector<uint32_t>>()) {
      if (e >= s.universe_size) throw Error("set element out of range");
      b.set(e);
    }
    s.sets.push_back(std::move(b));
  }
  if (s.sets.empty()) throw Error("set system needs k >= 1");
  return s;
}

Json to_json(const WellBehavedCert& c) {
  Json j;
  j["version"] = 1;
  j["type"] = "well_behaved_cert";
  j["alpha"] = rj(c.alpha);
  j["r"] = c.r;
  j["ell"] = c.ell;
  j["eta"] = rj(c.eta);
  j["h"] = c.h;
  j["gamma"] = rj(c.gamma);
  j["mu"] = rj(c.mu);
  j["m0_formula"] = std::to_string(c.m0_formula);
  j["m0_used"] = c.m0_used;
  j["blocks"] = c.blocks;
  j["unsafe_m0"] = c.unsafe_m0;
  j["has_duplicate_sets"] = c.has_duplicate_sets;
  j["checked_sizes"] = c.checked_sizes;
  j["checked_disperser"] = c.checked_disperser;
  j["checked_uniform"] = c.checked_uniform;
  return j;
}

Json to_json(const Csp2Instance& inst) {
  Json j;
  j["version"] = 1;
  j["type"] = "csp2";
  j["k"] = inst.k;
  j["alphabet_sizes"] = inst.alphabet_sizes;
  j["unsat_trivial"] = inst.unsat_trivial;
  Json cons = Json::array();
  for (uint32_t u = 0; u < inst.k; ++u)
    for (uint32_t v = u + 1; v < inst.k; ++v) {
      const EdgeConstraint& c = inst.constraint(u, v);
      Json e;
      e["u"] = u;
      e["v"] = v;
      if (c.keyed) {
        e["keys_u"] = c.key_u;
        e["keys_v"] = c.key_v;
      } else {
        Json pairs = Json::array();
        for (uint32_t a = 0; a < c.rows.size(); ++a)
          for (uint32_t b : c.rows[a].elements())
            pairs.push_back(Json::array({a, b}));
        e["allowed"] = pairs;
      }
      cons.push_back(e);
    }
  j["constraints"] = cons;
  return j;
}

Csp2Instance csp_from_json(const Json& j) {
  Csp2Instance inst;
  inst.k = j.at("k").get<uint32_t>();
  inst.alphabet_sizes = j.at("alphabet_sizes").get<std::vector<uint32_t>>();
  inst.unsat_trivial = j.value("unsat_trivial", false);
  inst.constraints.resize(inst.num_edges());
  for (const Json& e : j.at("constraints")) {
    uint32_t u = e.at("u").get<uint32_t>(), v = e.at("v").get<uint32_t>();
    if (u >= v || v >= inst.k) throw Error("bad constraint endpoints");
    EdgeConstraint c;
    if (e.contains("keys_u")) {
      c.keyed = true;
      c.key_u = e.at("keys_u").get<std::vector<uint64_t>>();
      c.key_v = e.at("keys_v").get<std::vector<uint64_t>>();
    } else {
      c.keyed = false;
      c.rows.assign(inst.alphabet_sizes[u], Bitset(inst.alphabet_sizes[v]));
      for (const Json& p : e.at("allowed")) {
        uint32_t a = p.at(0).get<uint32_t>(), b = p.at(1).get<uint32_t>();
        if (a >= inst.alphabet_sizes[u] || b >= inst.alphabet_sizes[v])
          throw Error("allowed pair out of range");
        c.rows[a].set(b);
      }
    }
    inst.constraints[inst.edge_index(u, v)] = std::move(c);
  }
  inst.validate();
  return inst;
}

Json labeling_to_json(const Labeling& lab) {
  Json j;
  j["version"] = 1;
  j["type"] = "labeling";
  j["labels"] = lab;
  return j;
}

Labeling labeling_from_json(const Json& j) {
  return j.at("labels").get<Labeling>();
}

Json to_json(const RedBlueGraph& g) {
  Json j;
  j["version"] = 1;
  j["type"] = "red_blue_graph";
  j["num_vertices"] = g.k();
  Json blue = Json::array(), red = Json::array();
  for (auto [u, v] : g.blue_edges()) blue.push_back(Json::array({u, v}));
  for (auto [u, v] : g.red_edges()) red.push_back(Json::array({u, v}));
  j["blue"] = blue;
  j["red"] = red;
  return j;
}

RedBlueGraph redblue_from_json(const Json& j) {
  RedBlueGraph g(j.at("num_vertices").get<uint32_t>());
  for (const Json& e : j.at("blue"))
    g.add_blue(e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>());
  for (const Json& e : j.at("red"))
    g.add_red(e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>());
  return g;
}

Json to_json(const FunctionFamily& f) {
  Json j;
  j["version"] = 1;
  j["type"] = "function_family";
  j["n"] = f.n;
  Json sets = Json::array(), vals = Json::array();
  for (uint32_t i = 0; i < f.k(); ++i) {
    std::vector<uint32_t> elems = f.supports.sets[i].elements();
    sets.push_back(elems);
    std::string bits(elems.size(), '0');
    for (size_t p = 0; p < elems.size(); ++p)
      if (f.values[i].test(elems[p])) bits[p] = '1';
    vals.push_back(bits);
  }
  j["supports"] = sets;
  j["values"] = vals;
  return j;
}

FunctionFamily family_from_json(const Json& j) {
  FunctionFamily f;
  f.n = j.at("n").get<uint32_t>();
  f.supports.universe_size = f.n;
  const Json& sets = j.at("supports");
  const Json& vals = j.at("values");
  if (sets.size() != vals.size()) throw Error("family: size mismatch");
  for (size_t i = 0; i < sets.size(); ++i) {
    std::vector<uint32_t> elems = sets[i].get<std::vector<uint32_t>>();
    std::string bits = vals[i].get<std::string>();
    if (bits.size() != elems.size()) throw Error("family: value width");
    Bitset s(f.n), v(f.n);
    for (size_t p = 0; p < elems.size(); ++p) {
      if (elems[p] >= f.n) throw Error("family: element out of range");
      s.set(elems[p]);
      if (bits[p] == '1') v.set(elems[p]);
    }
    f.supports.sets.push_back(std::move(s));
    f.values.push_back(std::move(v));
  }
  f.validate();
  return f;
}

Json to_json(const DsnInstance& d) {
  Json j;
  j["version"] = 1;
  j["type"] = "dsn";
  j["num_vertices"] = d.num_vertices;
  Json arcs = Json::array();
  for (const DsnArc& a : d.arcs) {
    Json e;
    e["tail"] = a.tail;
    e["head"] = a.head;
    e["weight"] = rj(a.weight);
    arcs.push_back(e);
  }
  j["arcs"] = arcs;
  Json dem = Json::array();
  for (auto [s, t] : d.demands) dem.push_back(Json::array({s, t}));
  j["demands"] = dem;
  return j;
}

DsnInstance dsn_from_json(const Json& j) {
  DsnInstance d;
  d.num_vertices = j.at("num_vertices").get<uint32_t>();
  for (const Json& e : j.at("arcs"))
    d.arcs.push_back({e.at("tail").get<uint32_t>(),
                      e.at("head").get<uint32_t>(), jr(e.at("weight"))});
  for (const Json& e : j.at("demands"))
    d.demands.push_back({e.at(0).get<uint32_t>(), e.at(1).get<uint32_t>()});
  d.validate();
  return d;
}

Json to_json(const DsnSolution& s) {
  Json j;
  j["version"] = 1;
  j["type"] = "dsn_solution";
  j["cost"] = rj(s.cost);
  j["arcs"] = s.arcs;
  return j;
}

Json to_json(const ReductionParams& p) {
  Json j;
  j["version"] = 1;
  j["type"] = "reduction_params";
  j["alpha"] = rj(p.alpha);
  j["gamma"] = rj(p.gamma);
  j["mu"] = rj(p.mu);
  j["zeta"] = rj(p.zeta);
  j["zeta_prime"] = rj(p.zeta_prime());
  j["ell"] = p.ell;
  j["r"] = p.r;
  j["h"] = p.h;
  j["k_sets"] = p.k_sets.str();
  j["eps"] = rj(p.eps);
  j["delta_bound"] = p.delta_bound;
  j["c"] = p.c;
  return j;
}

ReductionParams params_from_json(const Json& j) {
  ReductionParams p;
  p.alpha = jr(j.at("alpha"));
  p.gamma = jr(j.at("gamma"));
  p.mu = jr(j.at("mu"));
  p.zeta = jr(j.at("zeta"));
  p.ell = j.at("ell").get<uint32_t>();
  p.r = j.at("r").get<uint32_t>();
  p.h = j.at("h").get<uint32_t>();
  p.k_sets = Int(j.at("k_sets").get<std::string>());
  p.eps = jr(j.at("eps"));
  p.delta_bound = j.at("delta_bound").get<uint32_t>();
  p.c = j.at("c").get<uint32_t>();
  return p;
}

Json to_json(const ReductionArtifact& a) {
  Json j;
  j["version"] = 1;
  j["type"] = "reduction_artifact";
  j["formula"] = to_json(a.formula);
  j["clause_sets"] = to_json(a.clause_sets);
  j["var_sets"] = to_json(a.var_sets);
  j["instance"] = to_json(a.instance);
  Json verts = Json::array();
  for (uint32_t i = 0; i < a.instance.k; ++i) {
    Json v;
    v["vars"] = a.vertex_vars[i];
    Json labs = Json::array();
    for (uint64_t code : a.label_codes[i]) labs.push_back(code);
    v["label_codes"] = labs;
    verts.push_back(v);
  }
  j["vertices"] = verts;
  j["has_params"] = a.has_params;
  if (a.has_params) j["params"] = to_json(a.params);
  return j;
}

ReductionArtifact artifact_from_json(const Json& j) {
  // Rebuild from formula + clause sets; everything else is derived, then
  // cross-checked against the stored fields.
  CnfFormula f = formula_from_json(j.at("formula"));
  SetSystem t = setsystem_from_json(j.at("clause_sets"));
  ReductionArtifact a = build_2csp(f, t, 64);
  const Json& verts = j.at("vertices");
  if (verts.size() != a.instance.k) throw Error("artifact: vertex count");
  for (uint32_t i = 0; i < a.instance.k; ++i) {
    if (verts[i].at("vars").get<std::vector<uint32_t>>() != a.vertex_vars[i])
      throw Error("artifact: stored vertex vars disagree with rebuild");
    if (verts[i].at("label_codes").get<std::vector<uint64_t>>() !=
        a.label_codes[i])
      throw Error("artifact: stored labels disagree with rebuild");
  }
  a.has_params = j.value("has_params", false);
  if (a.has_params) a.params = params_from_json(j.at("params"));
  return a;
}

Json to_json(const DecodeAssignmentReport& r) {
  Json j;
  j["version"] = 1;
  j["type"] = "decode_report";
  j["decoded"] = r.decoded;
  j["below_threshold"] = r.below_threshold;
  j["agr"] = rj(r.agr);
  j["sprime_size"] = r.sprime_size;
  j["tstar"] = r.tstar;
  j["tstar_uniform_certified"] = r.tstar_uniform_certified;
  j["nu"] = rj(r.nu);
  j["decode_bound"] = rj(r.bound);
  j["uncovered"] = r.uncovered;
  j["eval"] = rj(r.eval);
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const DecodeResult& r) {
  Json j;
  j["version"] = 1;
  j["type"] = "agreement_decode_result";
  j["success"] = r.success;
  j["below_threshold"] = r.below_threshold;
  j["delta"] = rj(r.delta);
  j["subcollection"] = r.subcollection;
  j["global"] = bits_to_string(r.global);
  j["uncovered"] = r.uncovered;
  j["mean_disagreement"] = rj(r.mean_disa);
  j["d"] = r.d;
  j["d_prime"] = r.d_prime;
  j["q0"] = r.q0.str();
  j["zeta_prime"] = rj(r.zeta_prime);
  j["kappa"] = rj(r.kappa);
  j["size_bound"] = rj(r.size_bound);
  j["mean_bound_sq"] = rj(r.mean_bound_sq);
  j["beta_sq"] = rj(r.beta_sq);
  j["beta_close_count"] = r.beta_close_count;
  j["markov_bound"] = rj(r.markov_bound);
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const TranslationReport& r) {
  Json j;
  j["version"] = 1;
  j["type"] = "translation_report";
  j["clause_uniform"] = r.clause_uniform;
  j["var_uniform"] = r.var_uniform;
  j["clause_h_uniform"] = r.clause_h_uniform;
  j["var_h_uniform"] = r.var_h_uniform;
  j["clause_disperser"] = r.clause_disperser;
  j["var_disperser"] = r.var_disperser;
  j["uniform_implication"] = r.uniform_implication;
  j["h_uniform_implication"] = r.h_uniform_implication;
  j["disperser_implication"] = r.disperser_implication;
  j["pass"] = r.pass;
  j["detail"] = r.detail;
  return j;
}

}  // namespace redkit

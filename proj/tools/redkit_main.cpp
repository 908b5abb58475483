// Command-line front end: generation, set-system construction and checking,
// the 3-SAT -> 2-CSP reduction, agreement decoding, red/blue graph tools, the
// DSN reduction, lemma-verification suites and the full pipeline.
//
// Exit codes: 0 = ok / all properties held, 1 = a checked property was
// violated, 2 = usage or input error.

#include <CLI11.hpp>

#include <iostream>

#include "redkit/dsn.hpp"
#include "redkit/gen.hpp"
#include "redkit/json_io.hpp"
#include "redkit/pipeline.hpp"
#include "redkit/reduction.hpp"
#include "redkit/verify.hpp"

using namespace redkit;

namespace {

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_file(out, j.dump(2) + "\n");
}

Json graph_metrics(const RedBlueGraph& g) {
  Json j;
  j["num_vertices"] = g.k();
  j["blue_edges"] = g.blue_edge_count();
  j["red_edges"] = g.red_edge_count();
  return j;
}

int suite_exit(const verify::SuiteResult& r, const std::string& name) {
  std::cout << name << ": " << (r.pass ? "pass" : "FAIL") << " ("
            << r.checked << " checked)"
            << (r.detail.empty() ? "" : " — " + r.detail) << "\n";
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"redkit: 3-SAT -> 2-CSP -> DSN reduction toolkit"};
  app.require_subcommand(1);

  // ---- gen ----------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("gen", "generate a planted 3-CNF");
  uint32_t g_vars = 14, g_clauses = 18, g_delta = 4;
  uint64_t g_seed = 1;
  std::string g_out, g_planted_out;
  gen_cmd->add_option("--vars", g_vars);
  gen_cmd->add_option("--clauses", g_clauses);
  gen_cmd->add_option("--delta", g_delta);
  gen_cmd->add_option("--seed", g_seed);
  gen_cmd->add_option("--out", g_out, "DIMACS output path");
  gen_cmd->add_option("--planted-out", g_planted_out);

  // ---- sets ---------------------------------------------------------------
  auto* sets_cmd = app.add_subcommand("sets", "sample or construct a set system");
  uint32_t s_m = 24, s_k = 4, s_r = 1, s_ell = 2, s_h = 2, s_m0 = 0;
  double s_alpha = 0.5;
  uint64_t s_seed = 1;
  bool s_construct = false, s_exhaustive = false, s_unsafe = false;
  std::string s_eta = "3/10", s_mu = "3/10", s_out, s_cert_out;
  sets_cmd->add_option("--m", s_m);
  sets_cmd->add_option("--k", s_k);
  sets_cmd->add_option("--alpha", s_alpha);
  sets_cmd->add_option("--seed", s_seed);
  sets_cmd->add_flag("--construct", s_construct, "block construction");
  sets_cmd->add_option("--r", s_r);
  sets_cmd->add_option("--ell", s_ell);
  sets_cmd->add_option("--eta", s_eta);
  sets_cmd->add_option("--mu", s_mu);
  sets_cmd->add_option("--uniform-h", s_h);
  sets_cmd->add_option("--m0", s_m0, "block size override");
  sets_cmd->add_flag("--unsafe-m0", s_unsafe,
                     "accept an m0 below the lemma formula");
  sets_cmd->add_flag("--exhaustive", s_exhaustive);
  sets_cmd->add_option("--out", s_out);
  sets_cmd->add_option("--cert-out", s_cert_out);

  // ---- check-sets ---------------------------------------------------------
  auto* chk_cmd = app.add_subcommand("check-sets", "run the set-system checkers");
  std::string c_in, c_eta = "3/10", c_gamma = "1/4", c_mu = "3/10",
              c_alpha = "1/2";
  uint32_t c_r = 1, c_ell = 2, c_h = 2;
  bool c_enumerate = false;
  chk_cmd->add_option("--sets", c_in)->required();
  chk_cmd->add_option("--r", c_r);
  chk_cmd->add_option("--ell", c_ell);
  chk_cmd->add_option("--eta", c_eta);
  chk_cmd->add_option("--gamma", c_gamma);
  chk_cmd->add_option("--mu", c_mu);
  chk_cmd->add_option("--uniform-h", c_h);
  chk_cmd->add_option("--alpha", c_alpha);
  chk_cmd->add_flag("--enumerate", c_enumerate, "skip the sound shortcut");

  // ---- reduce -------------------------------------------------------------
  auto* red_cmd = app.add_subcommand("reduce", "build the 2-CSP from cnf+sets");
  std::string r_cnf, r_sets, r_out;
  uint32_t r_cap = 20, r_ell = 2, r_r = 2, r_h = 2;
  std::string r_mu = "3/10", r_zeta = "1/20";
  double r_alpha = 0.5;
  red_cmd->add_option("--cnf", r_cnf)->required();
  red_cmd->add_option("--sets", r_sets)->required();
  red_cmd->add_option("--out", r_out);
  red_cmd->add_option("--var-cap", r_cap);
  red_cmd->add_option("--p-alpha", r_alpha);
  red_cmd->add_option("--p-mu", r_mu);
  red_cmd->add_option("--p-zeta", r_zeta);
  red_cmd->add_option("--p-ell", r_ell);
  red_cmd->add_option("--p-r", r_r);
  red_cmd->add_option("--p-uniform-h", r_h);

  // ---- label --------------------------------------------------------------
  auto* lab_cmd = app.add_subcommand("label", "labeling from an assignment");
  std::string l_art, l_assign, l_out;
  uint32_t l_relabel = 0;
  uint64_t l_seed = 1;
  lab_cmd->add_option("--artifact", l_art)->required();
  lab_cmd->add_option("--assignment", l_assign)->required();
  lab_cmd->add_option("--relabel", l_relabel);
  lab_cmd->add_option("--seed", l_seed);
  lab_cmd->add_option("--out", l_out);

  // ---- decode -------------------------------------------------------------
  auto* dec_cmd = app.add_subcommand("decode", "decode an assignment back");
  std::string d_art, d_lab, d_out;
  uint64_t d_seed = 1;
  dec_cmd->add_option("--artifact", d_art)->required();
  dec_cmd->add_option("--labeling", d_lab)->required();
  dec_cmd->add_option("--seed", d_seed);
  dec_cmd->add_option("--out", d_out);

  // ---- walks / transitivity / dense ---------------------------------------
  auto* walks_cmd = app.add_subcommand("walks", "count blue walks");
  std::string w_graph;
  uint32_t w_ell = 2;
  bool w_census = false;
  walks_cmd->add_option("--graph", w_graph)->required();
  walks_cmd->add_option("--ell", w_ell);
  walks_cmd->add_flag("--census", w_census);

  auto* tr_cmd = app.add_subcommand("transitivity", "red/blue transitivity");
  std::string t_graph, t_q = "4";
  uint32_t t_ell = 2;
  tr_cmd->add_option("--graph", t_graph)->required();
  tr_cmd->add_option("--q", t_q);
  tr_cmd->add_option("--ell", t_ell);

  auto* dn_cmd = app.add_subcommand("dense", "dense-subgraph extraction");
  std::string n_graph, n_q0 = "4";
  uint32_t n_ell0 = 2, n_d0 = 1;
  dn_cmd->add_option("--graph", n_graph)->required();
  dn_cmd->add_option("--q0", n_q0);
  dn_cmd->add_option("--ell0", n_ell0);
  dn_cmd->add_option("--d0", n_d0);

  // ---- agree --------------------------------------------------------------
  auto* agree_cmd = app.add_subcommand("agree", "agreement-testing tools");
  agree_cmd->require_subcommand(1);
  auto* ag_dec = agree_cmd->add_subcommand("decode", "run the decoder");
  std::string ad_family, ad_out, ad_zeta = "1/8", ad_gamma = "1/2",
              ad_mu = "1/16";
  uint32_t ad_ell = 2, ad_r = 1, ad_h = 2;
  uint64_t ad_seed = 1;
  bool ad_best_effort = false;
  ag_dec->add_option("--family", ad_family)->required();
  ag_dec->add_option("--zeta", ad_zeta);
  ag_dec->add_option("--ell", ad_ell);
  ag_dec->add_option("--r", ad_r);
  ag_dec->add_option("--uniform-h", ad_h);
  ag_dec->add_option("--gamma", ad_gamma);
  ag_dec->add_option("--mu", ad_mu);
  ag_dec->add_option("--seed", ad_seed);
  ag_dec->add_flag("--best-effort", ad_best_effort);
  ag_dec->add_option("--out", ad_out);

  auto* ag_graph = agree_cmd->add_subcommand("graph", "consistency graph");
  std::string agg_family, agg_out, agg_zeta = "0", agg_zp = "1/8";
  ag_graph->add_option("--family", agg_family)->required();
  ag_graph->add_option("--zeta", agg_zeta);
  ag_graph->add_option("--zeta-prime", agg_zp);
  ag_graph->add_option("--out", agg_out);

  auto* ag_ver = agree_cmd->add_subcommand("verify-lemmas",
                                           "agreement lemma suites");
  uint32_t av_count = 10;
  uint64_t av_seed = 1;
  ag_ver->add_option("--count", av_count);
  ag_ver->add_option("--seed", av_seed);

  // ---- dsn ----------------------------------------------------------------
  auto* dsn_cmd = app.add_subcommand("dsn", "directed Steiner network tools");
  dsn_cmd->require_subcommand(1);
  auto* dsn_red = dsn_cmd->add_subcommand("reduce", "2-CSP -> DSN");
  std::string dr_csp, dr_out;
  dsn_red->add_option("--csp", dr_csp)->required();
  dsn_red->add_option("--out", dr_out);
  auto* dsn_solve = dsn_cmd->add_subcommand("solve", "exact optimum");
  std::string ds_in, ds_out;
  uint32_t ds_cap = 24;
  dsn_solve->add_option("--dsn", ds_in)->required();
  dsn_solve->add_option("--cap", ds_cap);
  dsn_solve->add_option("--out", ds_out);

  // ---- params -------------------------------------------------------------
  auto* par_cmd = app.add_subcommand("params", "parameter instantiation");
  std::string p_route = "eth", p_eps = "1/8";
  uint64_t p_m = 65536;
  std::string p_k = "65536";
  uint32_t p_c = 1, p_delta = 3;
  par_cmd->add_option("--route", p_route)->check(CLI::IsMember({"eth", "gap-eth"}));
  par_cmd->add_option("--m", p_m);
  par_cmd->add_option("--k", p_k);
  par_cmd->add_option("--c", p_c);
  par_cmd->add_option("--eps", p_eps);
  par_cmd->add_option("--delta", p_delta);

  // ---- verify-lemmas -------------------------------------------------------
  auto* ver_cmd = app.add_subcommand("verify-lemmas", "run all lemma suites");
  uint32_t v_count = 10;
  uint64_t v_seed = 1;
  bool v_heavy = false;
  ver_cmd->add_option("--count", v_count);
  ver_cmd->add_option("--seed", v_seed);
  ver_cmd->add_flag("--heavy", v_heavy, "include the large-k decoder suite");

  // ---- pipeline / report ----------------------------------------------------
  auto* pipe_cmd = app.add_subcommand("pipeline", "full gen..dsn run");
  PipelineConfig pc;
  pipe_cmd->add_option("--seed", pc.seed);
  pipe_cmd->add_option("--cnf", pc.cnf_in);
  pipe_cmd->add_option("--vars", pc.vars);
  pipe_cmd->add_option("--clauses", pc.clauses);
  pipe_cmd->add_option("--delta", pc.delta);
  pipe_cmd->add_option("--k", pc.k);
  pipe_cmd->add_option("--alpha", pc.alpha);
  pipe_cmd->add_flag("--construct-sets", pc.construct_sets);
  pipe_cmd->add_option("--m0", pc.m0_override);
  pipe_cmd->add_option("--relabel", pc.relabel);
  bool pipe_dsn = false;
  pipe_cmd->add_flag("--dsn", pipe_dsn);
  pipe_cmd->add_option("--out-dir", pc.out_dir);
  pipe_cmd->add_option("--report", pc.report_path);
  pipe_cmd->add_flag("--csv", pc.csv);

  auto* rep_cmd = app.add_subcommand("report", "summarize a pipeline report");
  std::string rp_in;
  bool rp_csv = false;
  rep_cmd->add_option("--in", rp_in)->required();
  rep_cmd->add_flag("--csv", rp_csv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      gen::PlantedCnf pcnf = gen::gen_planted(g_vars, g_clauses, g_delta, g_seed);
      if (g_out.empty())
        std::cout << write_dimacs(pcnf.formula);
      else
        write_file(g_out, write_dimacs(pcnf.formula));
      if (!g_planted_out.empty())
        write_file(g_planted_out, to_json(pcnf.planted).dump(2) + "\n");
      return 0;
    }
    if (*sets_cmd) {
      if (s_construct) {
        ConstructParams p;
        p.alpha = s_alpha;
        p.r = s_r;
        p.ell = s_ell;
        p.eta = rat_parse(s_eta);
        p.h = s_h;
        p.mu = rat_parse(s_mu);
        p.m0_override = s_unsafe ? (s_m0 ? s_m0 : 6) : s_m0;
        p.exhaustive_blocks = s_exhaustive;
        ConstructResult cr = construct_deterministic(s_m, s_k, p, s_seed);
        emit(to_json(cr.system), s_out);
        if (!s_cert_out.empty())
          write_file(s_cert_out, to_json(cr.cert).dump(2) + "\n");
      } else {
        emit(to_json(sample_random(s_m, s_k, s_alpha, s_seed)), s_out);
      }
      return 0;
    }
    if (*chk_cmd) {
      SetSystem s = setsystem_from_json(Json::parse(read_file(c_in)));
      Json j;
      j["sizes"] = check_sizes(s, rat_parse(c_alpha));
      j["uniform"] = check_uniform(s, rat_parse(c_gamma), rat_parse(c_mu));
      j["all_subcollections_uniform"] = check_all_subcollections_uniform(
          s, c_h, rat_parse(c_gamma), rat_parse(c_mu));
      j["disperser"] =
          c_enumerate
              ? check_disperser_enumerate(s, c_r, c_ell, rat_parse(c_eta))
              : check_disperser(s, c_r, c_ell, rat_parse(c_eta));
      std::cout << j.dump(2) << "\n";
      for (auto& [key, val] : j.items())
        if (!val.get<bool>()) return 1;
      return 0;
    }
    if (*red_cmd) {
      CnfFormula f = parse_dimacs(read_file(r_cnf));
      SetSystem t = setsystem_from_json(Json::parse(read_file(r_sets)));
      ReductionArtifact art = build_2csp(f, t, r_cap);
      art.params.alpha = rat_from_double(r_alpha);
      art.params.gamma = art.params.alpha / 2;
      art.params.mu = rat_parse(r_mu);
      art.params.zeta = rat_parse(r_zeta);
      art.params.ell = r_ell;
      art.params.r = r_r;
      art.params.h = r_h;
      art.params.k_sets = t.k();
      art.params.eps = Rat(1, 4);
      art.params.delta_bound = f.occurrence_bound;
      art.has_params = true;
      emit(to_json(art), r_out);
      return 0;
    }
    if (*lab_cmd) {
      ReductionArtifact art =
          artifact_from_json(Json::parse(read_file(l_art)));
      Assignment a = assignment_from_json(Json::parse(read_file(l_assign)));
      Labeling lab = labeling_from_assignment(art, a);
      Rng rng(l_seed);
      for (uint32_t j = 0; j < l_relabel; ++j) {
        uint32_t vtx = static_cast<uint32_t>(rng.below(art.instance.k));
        lab[vtx] = static_cast<uint32_t>(
            rng.below(art.instance.alphabet_sizes[vtx]));
      }
      emit(labeling_to_json(lab), l_out);
      return 0;
    }
    if (*dec_cmd) {
      ReductionArtifact art =
          artifact_from_json(Json::parse(read_file(d_art)));
      Labeling lab = labeling_from_json(Json::parse(read_file(d_lab)));
      DecodeAssignmentResult dr = decode_assignment(art, lab, d_seed);
      Json j = to_json(dr.report);
      j["assignment"] = bits_to_string(dr.assignment.bits);
      emit(j, d_out);
      bool violated = dr.report.tstar_uniform_certified &&
                      dr.report.eval < dr.report.bound;
      return violated ? 1 : 0;
    }
    if (*walks_cmd) {
      RedBlueGraph g = redblue_from_json(Json::parse(read_file(w_graph)));
      Json j = graph_metrics(g);
      j["ell"] = w_ell;
      j["blue_walks"] = count_blue_walks(g, w_ell).str();
      if (w_census) {
        WalkCensus c = walk_census(g, w_ell);
        j["red_filled"] = c.red_filled_count.str();
        Json per = Json::array();
        for (auto& [pr, cnt] : c.per_red_pair)
          per.push_back(Json::array({pr.first, pr.second, cnt.str()}));
        j["per_red_pair"] = per;
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*tr_cmd) {
      RedBlueGraph g = redblue_from_json(Json::parse(read_file(t_graph)));
      TransitivityResult r = check_transitivity(g, Int(t_q), t_ell);
      Json j = graph_metrics(g);
      j["q"] = t_q;
      j["ell"] = t_ell;
      j["transitive"] = r.transitive;
      j["worst_count"] = r.worst_count.str();
      if (r.worst_pair)
        j["worst_pair"] = Json::array({r.worst_pair->first, r.worst_pair->second});
      std::cout << j.dump(2) << "\n";
      return r.transitive ? 0 : 1;
    }
    if (*dn_cmd) {
      RedBlueGraph g = redblue_from_json(Json::parse(read_file(n_graph)));
      DenseSubgraphs ds = find_dense_subgraphs(g, Int(n_q0), n_ell0, n_d0);
      Json j;
      j["u1"] = ds.u1;
      j["u2"] = ds.u2;
      j["density"] = rat_str(ds.density);
      j["threshold"] = rat_str(ds.threshold);
      j["pivots"] = Json::array({ds.pivot_u, ds.pivot_v});
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (*ag_dec) {
      FunctionFamily fam = family_from_json(Json::parse(read_file(ad_family)));
      DecodeParams p;
      p.zeta = rat_parse(ad_zeta);
      p.ell = ad_ell;
      p.r = ad_r;
      p.h = ad_h;
      p.gamma = rat_parse(ad_gamma);
      p.mu = rat_parse(ad_mu);
      DecodeOptions o;
      o.best_effort = ad_best_effort;
      o.seed = ad_seed;
      DecodeResult res = agreement_decode(fam, p, o);
      emit(to_json(res), ad_out);
      return res.success ? 0 : 1;
    }
    if (*ag_graph) {
      FunctionFamily fam = family_from_json(Json::parse(read_file(agg_family)));
      emit(to_json(build_consistency_graph(fam, rat_parse(agg_zeta),
                                           rat_parse(agg_zp))),
           agg_out);
      return 0;
    }
    if (*ag_ver) {
      int rc = 0;
      rc |= suite_exit(verify::transitivity_suite(av_count, av_seed),
                       "transitivity");
      rc |= suite_exit(verify::transitivity2_suite(av_count, av_seed),
                       "generalized-transitivity");
      rc |= suite_exit(verify::majority_suite(av_count, av_seed), "majority");
      rc |= suite_exit(verify::disjoint_walks_suite(av_count, av_seed),
                       "disjoint-walks");
      return rc;
    }
    if (*dsn_red) {
      Csp2Instance inst = csp_from_json(Json::parse(read_file(dr_csp)));
      emit(to_json(build_dsn(inst)), dr_out);
      return 0;
    }
    if (*dsn_solve) {
      DsnInstance d = dsn_from_json(Json::parse(read_file(ds_in)));
      std::optional<DsnSolution> sol = dsn_opt_bruteforce(d, ds_cap);
      Json j;
      j["feasible"] = sol.has_value();
      if (sol) j["solution"] = to_json(*sol);
      emit(j, ds_out);
      return 0;
    }
    if (*par_cmd) {
      ReductionParams p =
          p_route == "eth"
              ? instantiate_params_eth(p_m, p_c, rat_parse(p_eps), p_delta)
              : instantiate_params_gap_eth(Int(p_k), rat_parse(p_eps),
                                           p_delta);
      std::cout << to_json(p).dump(2) << "\n";
      return 0;
    }
    if (*ver_cmd) {
      int rc = 0;
      rc |= suite_exit(verify::transitivity_suite(v_count, v_seed),
                       "transitivity");
      rc |= suite_exit(verify::transitivity2_suite(v_count, v_seed),
                       "generalized-transitivity");
      rc |= suite_exit(verify::dense_subgraph_suite(v_count, v_seed), "dense");
      rc |= suite_exit(verify::majority_suite(v_count, v_seed), "majority");
      rc |= suite_exit(verify::disjoint_walks_suite(v_count, v_seed),
                       "disjoint-walks");
      rc |= suite_exit(verify::translation_suite(v_count, v_seed),
                       "translation");
      rc |= suite_exit(verify::decode_assignment_suite(v_count, v_seed),
                       "decode-assignment");
      if (v_heavy)
        rc |= suite_exit(verify::decoder_suite(std::min(v_count, 5u), v_seed),
                         "decoder");
      return rc;
    }
    if (*pipe_cmd) {
      pc.run_dsn = pipe_dsn;
      Json rep;
      int rc = run_pipeline(pc, &rep);
      if (pc.report_path.empty()) std::cout << rep.dump(2) << "\n";
      if (pc.csv) std::cout << report_csv(rep);
      return rc;
    }
    if (*rep_cmd) {
      Json rep = Json::parse(read_file(rp_in));
      if (rp_csv)
        std::cout << report_csv(rep);
      else
        std::cout << rep.dump(2) << "\n";
      return rep.value("violation", false) ? 1 : 0;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

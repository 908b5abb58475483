#include "redkit/pipeline.hpp"

#include "redkit/dsn.hpp"
#include "redkit/gen.hpp"
#include "redkit/reduction.hpp"

namespace redkit {

namespace {

void maybe_write(const std::string& dir, const std::string& name,
                 const Json& j) {
  if (dir.empty()) return;
  write_file(dir + "/" + name, j.dump(2) + "\n");
}

}  // namespace

int run_pipeline(const PipelineConfig& cfg, Json* report_out) {
  Json rep;
  rep["version"] = 1;
  rep["type"] = "pipeline_report";
  rep["seed"] = cfg.seed;
  bool violation = false;
  std::string stage = "gen";

  try {
    // gen
    CnfFormula formula;
    std::optional<Assignment> planted;
    if (!cfg.cnf_in.empty()) {
      formula = parse_dimacs(read_file(cfg.cnf_in));
      rep["gen"] = {{"loaded", cfg.cnf_in}};
    } else {
      gen::PlantedCnf pc =
          gen::gen_planted(cfg.vars, cfg.clauses, cfg.delta, cfg.seed);
      formula = std::move(pc.formula);
      planted = std::move(pc.planted);
      rep["gen"] = {{"vars", formula.num_vars},
                    {"clauses", formula.num_clauses()},
                    {"occurrence_bound", formula.occurrence_bound}};
      // planted must satisfy everything; recount
      Rat v = eval_fraction(formula, *planted);
      rep["gen"]["planted_value"] = rat_str(v);
      if (v != 1) violation = true;
    }
    maybe_write(cfg.out_dir, "formula.json", to_json(formula));

    // sets
    stage = "sets";
    SetSystem clause_sets;
    if (cfg.construct_sets) {
      ConstructParams cp;
      cp.alpha = cfg.alpha;
      cp.eta = Rat(3, 10);
      cp.mu = Rat(3, 10);
      cp.m0_override = cfg.m0_override;
      ConstructResult cr = construct_deterministic(
          formula.num_clauses(), cfg.k, cp, cfg.seed ^ 0x5e75);
      clause_sets = std::move(cr.system);
      rep["sets"] = {{"mode", "construct"}, {"cert", to_json(cr.cert)}};
    } else {
      clause_sets = sample_random(formula.num_clauses(), cfg.k, cfg.alpha,
                                  cfg.seed ^ 0x5e75);
      rep["sets"] = {{"mode", "random"}, {"k", cfg.k}};
    }
    maybe_write(cfg.out_dir, "sets.json", to_json(clause_sets));

    // reduce
    stage = "reduce";
    ReductionArtifact art = build_2csp(formula, clause_sets);
    art.params.alpha = rat_from_double(cfg.alpha);
    art.params.gamma = art.params.alpha / 2;
    art.params.mu = cfg.p_mu;
    art.params.zeta = cfg.p_zeta;
    art.params.ell = cfg.p_ell;
    art.params.r = cfg.p_r;
    art.params.h = cfg.p_h;
    art.params.k_sets = cfg.k;
    art.params.eps = Rat(1, 4);
    art.params.delta_bound = formula.occurrence_bound;
    art.has_params = true;
    {
      Json jr;
      jr["k"] = art.instance.k;
      jr["alphabet_sizes"] = art.instance.alphabet_sizes;
      jr["unsat_trivial"] = art.instance.unsat_trivial;
      rep["reduce"] = jr;
    }
    maybe_write(cfg.out_dir, "artifact.json", to_json(art));

    // label
    stage = "label";
    std::optional<Labeling> lab;
    if (planted && !art.instance.unsat_trivial) {
      lab = labeling_from_assignment(art, *planted);
      Rng rng(cfg.seed ^ 0x1ab);
      for (uint32_t j = 0; j < cfg.relabel; ++j) {
        uint32_t vtx = static_cast<uint32_t>(rng.below(art.instance.k));
        (*lab)[vtx] = static_cast<uint32_t>(
            rng.below(art.instance.alphabet_sizes[vtx]));
      }
      Rat lv = labeling_value(art.instance, *lab);
      rep["label"] = {{"relabel", cfg.relabel}, {"value", rat_str(lv)}};
      maybe_write(cfg.out_dir, "labeling.json", labeling_to_json(*lab));
      // completeness: the untouched planted labeling has value exactly 1
      if (cfg.relabel == 0 && lv != 1) violation = true;
    }

    // decode
    if (cfg.run_decode && lab) {
      stage = "decode";
      DecodeAssignmentResult dr = decode_assignment(art, *lab, cfg.seed);
      rep["decode"] = to_json(dr.report);
      maybe_write(cfg.out_dir, "decode_report.json", to_json(dr.report));
      if (dr.report.tstar_uniform_certified &&
          dr.report.eval < dr.report.bound)
        violation = true;  // the decode inequality is unconditional
      if (cfg.relabel == 0 && dr.report.nu != 0) violation = true;
    }

    // verify (translation lemmas on this artifact)
    if (cfg.run_translation) {
      stage = "verify";
      TranslationReport tr = check_set_translation(
          art, 2, 2, Rat(7, 20), 2, Rat(1, 4), Rat(1, 4));
      rep["verify"] = to_json(tr);
      if (!tr.pass) violation = true;
    }

    // dsn
    if (cfg.run_dsn) {
      stage = "dsn";
      uint64_t labels = 0;
      for (uint32_t s : art.instance.alphabet_sizes) labels += s;
      if (labels > cfg.dsn_label_cap) {
        rep["dsn"] = {{"skipped", "label count above cap"}};
      } else {
        DsnInstance d = build_dsn(art.instance);
        Json jd;
        jd["demands"] = d.demands.size();
        jd["k_prime_expected"] =
            static_cast<uint64_t>(art.instance.k) * (art.instance.k - 1);
        if (d.demands.size() !=
            static_cast<uint64_t>(art.instance.k) * (art.instance.k - 1))
          violation = true;
        std::optional<DsnSolution> sol = dsn_opt_bruteforce(d);
        jd["feasible"] = sol.has_value();
        if (sol) jd["opt_cost"] = rat_str(sol->cost);
        rep["dsn"] = jd;
        maybe_write(cfg.out_dir, "dsn.json", to_json(d));
      }
    }
  } catch (const Error& e) {
    rep["error"] = {{"stage", stage}, {"what", e.what()}};
    if (report_out) *report_out = rep;
    if (!cfg.report_path.empty())
      write_file(cfg.report_path, rep.dump(2) + "\n");
    throw;
  }

  rep["violation"] = violation;
  if (report_out) *report_out = rep;
  if (!cfg.report_path.empty())
    write_file(cfg.report_path, rep.dump(2) + "\n");
  return violation ? 1 : 0;
}

std::string report_csv(const Json& report) {
  std::string header = "seed,stage_count,violation";
  std::string row = std::to_string(report.value("seed", 0ULL)) + "," +
                    std::to_string(report.size()) + "," +
                    (report.value("violation", false) ? "1" : "0");
  return header + "\n" + row + "\n";
}

}  // namespace redkit

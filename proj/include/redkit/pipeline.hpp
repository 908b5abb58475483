#pragma once

#include <optional>
#include <string>

#include "redkit/json_io.hpp"

namespace redkit {

// One end-to-end run: gen (or load) -> sets -> reduce -> label -> decode ->
// verify -> dsn, every stage optional, every measured quantity and every
// bound it was compared against embedded in the report. Reports contain no
// floating point and replay bit-for-bit from (inputs, seed, config).
struct PipelineConfig {
  uint64_t seed = 1;

  std::string cnf_in;  // load instead of generating when nonempty
  uint32_t vars = 14, clauses = 18, delta = 4;

  uint32_t k = 4;
  double alpha = 0.5;
  bool construct_sets = false;  // block construction instead of sampling
  uint32_t m0_override = 6;

  uint32_t relabel = 0;  // labeling noise: vertices re-labeled at random

  bool run_decode = true;
  bool run_translation = true;
  bool run_dsn = false;
  uint32_t dsn_label_cap = 64;  // skip the dsn stage above this many labels

  // decode-direction parameters
  Rat p_mu = Rat(3, 10), p_zeta = Rat(1, 20);
  uint32_t p_ell = 2, p_r = 2, p_h = 2;

  std::string out_dir;       // when nonempty, artifacts are written here
  std::string report_path;   // when nonempty, the report is written here
  bool csv = false;
};

// Returns 0 when every checked property held, 1 on a property violation.
// Throws on usage/configuration errors (callers map those to exit code 2).
int run_pipeline(const PipelineConfig& cfg, Json* report_out = nullptr);

// One-line CSV summary of a pipeline report (header + row).
std::string report_csv(const Json& report);

}  // namespace redkit

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "redkit/bitset.hpp"
#include "redkit/error.hpp"
#include "redkit/rational.hpp"

namespace redkit {

struct Lit {
  uint32_t var;  // 0-based
  bool neg;
  bool operator==(const Lit&) const = default;
};

using Clause = std::vector<Lit>;

// 3-CNF instance. Invariants (enforced by normalize / parse_dimacs):
//   - every clause has 1..3 literals, no variable twice in a clause;
//   - every variable index < num_vars and occurs in at least one clause
//     (unused variables are stripped and indices compacted at load);
//   - occurrence_bound is the exact max over variables of clause membership.
struct CnfFormula {
  uint32_t num_vars = 0;
  std::vector<Clause> clauses;
  uint32_t occurrence_bound = 0;

  uint32_t num_clauses() const { return static_cast<uint32_t>(clauses.size()); }
  bool operator==(const CnfFormula&) const = default;
};

// Total assignment on [num_vars]; bit v = value of variable v.
struct Assignment {
  Bitset bits;
};

// Validates clause shape, strips unused variables (compacting indices in
// first-occurrence order is NOT used: original relative order is kept),
// computes occurrence_bound. `var_map_out`, when non-null, receives
// old index -> new index (UINT32_MAX for stripped variables).
CnfFormula normalize_formula(uint32_t declared_vars,
                             const std::vector<std::vector<int>>& raw_clauses,
                             std::vector<uint32_t>* var_map_out = nullptr);

CnfFormula parse_dimacs(const std::string& text);
std::string write_dimacs(const CnfFormula& f);

// var(T) over clause indices T.
Bitset clause_vars(const CnfFormula& f, const std::vector<uint32_t>& t);

bool clause_satisfied(const Clause& c, const Bitset& bits);
uint32_t count_satisfied(const CnfFormula& f, const Assignment& a);

// Fraction of satisfied clauses, exact.
Rat eval_fraction(const CnfFormula& f, const Assignment& a);

// Exact MAX-3-SAT by exhaustive enumeration, lexicographically smallest
// witness (variable 0 is the most significant position). num_vars <= cap.
struct MaxSatResult {
  Rat value;
  Assignment witness;
};
MaxSatResult max_sat_bruteforce(const CnfFormula& f, uint32_t cap = 24);

}  // namespace redkit

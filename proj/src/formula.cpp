#include "redkit/formula.hpp"

#include <algorithm>
#include <sstream>

namespace redkit {

CnfFormula normalize_formula(uint32_t declared_vars,
                             const std::vector<std::vector<int>>& raw_clauses,
                             std::vector<uint32_t>* var_map_out) {
  std::vector<bool> used(declared_vars, false);
  for (size_t ci = 0; ci < raw_clauses.size(); ++ci) {
    const auto& rc = raw_clauses[ci];
    if (rc.empty() || rc.size() > 3)
      throw Error("clause " + std::to_string(ci) + ": width " +
                  std::to_string(rc.size()) + " outside 1..3");
    for (size_t a = 0; a < rc.size(); ++a) {
      int lit = rc[a];
      uint32_t v = static_cast<uint32_t>(lit < 0 ? -lit : lit);
      if (lit == 0 || v > declared_vars)
        throw Error("clause " + std::to_string(ci) + ": literal out of range");
      for (size_t b = 0; b < a; ++b) {
        uint32_t u = static_cast<uint32_t>(rc[b] < 0 ? -rc[b] : rc[b]);
        if (u == v)
          throw Error("clause " + std::to_string(ci) + ": variable " +
                      std::to_string(v) + " repeated");
      }
      used[v - 1] = true;
    }
  }

  std::vector<uint32_t> remap(declared_vars, UINT32_MAX);
  uint32_t next = 0;
  for (uint32_t v = 0; v < declared_vars; ++v)
    if (used[v]) remap[v] = next++;

  CnfFormula f;
  f.num_vars = next;
  f.clauses.reserve(raw_clauses.size());
  std::vector<uint32_t> occ(next, 0);
  for (const auto& rc : raw_clauses) {
    Clause c;
    for (int lit : rc) {
      uint32_t v = remap[static_cast<uint32_t>(lit < 0 ? -lit : lit) - 1];
      c.push_back({v, lit < 0});
    }
    for (const Lit& l : c) occ[l.var]++;
    f.clauses.push_back(std::move(c));
  }
  f.occurrence_bound = occ.empty() ? 0 : *std::max_element(occ.begin(), occ.end());
  if (var_map_out) *var_map_out = std::move(remap);
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  uint32_t declared_vars = 0, declared_clauses = 0;

  std::vector<std::vector<int>> clauses;
  std::vector<int> cur;
  int cur_line = 0;  // line where the current clause started

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c" || tok[0] == 'c') continue;
    if (tok == "p") {
      if (have_header) throw ParseError(lineno, "duplicate header");
      std::string fmt;
      long long nv = -1, nc = -1;
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
        throw ParseError(lineno, "malformed header");
      declared_vars = static_cast<uint32_t>(nv);
      declared_clauses = static_cast<uint32_t>(nc);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(lineno, "clause before header");
    ls.clear();
    ls.str(line);
    long long lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (cur.empty()) throw ParseError(lineno, "empty clause");
        if (cur.size() > 3)
          throw ParseError(cur_line, "clause width " +
                                         std::to_string(cur.size()) +
                                         " exceeds 3");
        clauses.push_back(cur);
        cur.clear();
      } else {
        if (cur.empty()) cur_line = lineno;
        uint32_t v = static_cast<uint32_t>(lit < 0 ? -lit : lit);
        if (v > declared_vars)
          throw ParseError(lineno, "literal " + std::to_string(lit) +
                                       " out of range (header declares " +
                                       std::to_string(declared_vars) + ")");
        for (int prev : cur)
          if (static_cast<uint32_t>(prev < 0 ? -prev : prev) == v)
            throw ParseError(lineno, "variable " + std::to_string(v) +
                                         " repeated in clause");
        cur.push_back(static_cast<int>(lit));
      }
    }
    if (!ls.eof()) throw ParseError(lineno, "unexpected token");
  }
  if (!have_header) throw ParseError(lineno, "missing header");
  if (!cur.empty()) throw ParseError(cur_line, "unterminated clause");
  if (clauses.size() != declared_clauses)
    throw ParseError(lineno, "header declares " +
                                 std::to_string(declared_clauses) +
                                 " clauses, found " +
                                 std::to_string(clauses.size()));
  return normalize_formula(declared_vars, clauses);
}

std::string write_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (const Lit& l : c) out << (l.neg ? -(int)(l.var + 1) : (int)(l.var + 1)) << ' ';
    out << "0\n";
  }
  return out.str();
}

Bitset clause_vars(const CnfFormula& f, const std::vector<uint32_t>& t) {
  Bitset vars(f.num_vars);
  for (uint32_t ci : t) {
    if (ci >= f.clauses.size())
      throw Error("clause index " + std::to_string(ci) + " out of range");
    for (const Lit& l : f.clauses[ci]) vars.set(l.var);
  }
  return vars;
}

bool clause_satisfied(const Clause& c, const Bitset& bits) {
  for (const Lit& l : c)
    if (bits.test(l.var) != l.neg) return true;
  return false;
}

uint32_t count_satisfied(const CnfFormula& f, const Assignment& a) {
  uint32_t n = 0;
  for (const Clause& c : f.clauses)
    if (clause_satisfied(c, a.bits)) ++n;
  return n;
}

Rat eval_fraction(const CnfFormula& f, const Assignment& a) {
  if (f.clauses.empty()) throw Error("formula has no clauses");
  return Rat(count_satisfied(f, a), f.num_clauses());
}

MaxSatResult max_sat_bruteforce(const CnfFormula& f, uint32_t cap) {
  if (f.num_vars > cap)
    throw CapExceeded("max_sat_bruteforce: " + std::to_string(f.num_vars) +
                      " vars exceeds cap " + std::to_string(cap));
  const uint32_t n = f.num_vars;
  const uint64_t total = 1ULL << n;
  uint32_t best = 0;
  uint64_t best_a = 0;
  bool have = false;
  for (uint64_t a = 0; a < total; ++a) {
    // Bit (n-1-v) of `a` is the value of variable v, so ascending `a` is
    // lexicographic order on the assignment vector; first strict improvement
    // keeps the lexicographically smallest witness.
    Bitset bits(n);
    for (uint32_t v = 0; v < n; ++v)
      if ((a >> (n - 1 - v)) & 1) bits.set(v);
    uint32_t sat = 0;
    for (const Clause& c : f.clauses)
      if (clause_satisfied(c, bits)) ++sat;
    if (!have || sat > best) {
      best = sat;
      best_a = a;
      have = true;
      if (best == f.clauses.size()) break;  // value 1 cannot be improved
    }
  }
  Assignment w{Bitset(n)};
  for (uint32_t v = 0; v < n; ++v)
    if ((best_a >> (n - 1 - v)) & 1) w.bits.set(v);
  return {Rat(best, f.num_clauses()), std::move(w)};
}

}  // namespace redkit

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "packcol/patterns.hpp"
#include "packcol/solver.hpp"
#include "packcol/theorems.hpp"

namespace packcol {

struct TheoremRow {
  int theorem = 0;
  std::string family;
  ParamMap params;
  ClaimedValue claimed;
  int upper = 0;
  std::string upper_source;
  int lower = 0;
  std::string lower_source;  // "UNSAT k=..", "prop1", or "SKIPPED: .."
  bool agreement = false;
  bool timeout = false;
};

inline std::string theorem_family(int theorem) {
  switch (theorem) {
    case 3: return "CORONA";
    case 4: return "CL";
    case 5: return "H";
    case 6:
    case 7:
    case 8: return "GENH";
  }
  throw PatternError("no table for theorem " + std::to_string(theorem));
}

// Parameter choices covered by a theorem, from user ranges.
inline std::vector<ParamMap> theorem_params(int theorem, const ParamRanges& ranges) {
  auto range = [&](const char* p) {
    auto it = ranges.find(p);
    if (it == ranges.end()) throw PatternError(std::string("theorem table needs a range for ") + p);
    return it->second;
  };
  std::vector<ParamMap> out;
  auto each = [&](const char* p, int lo_min, auto f) {
    auto [lo, hi] = range(p);
    for (int v = std::max(lo, lo_min); v <= hi; ++v) f(v);
  };
  switch (theorem) {
    case 3:
    case 4: each("n", 3, [&](int n) { out.push_back({{"n", n}}); }); break;
    case 5: each("r", 2, [&](int r) { out.push_back({{"r", r}}); }); break;
    case 6:
      each("l", 3, [&](int l) {
        if (l == 5) return;
        each("r", 2, [&](int r) { out.push_back({{"l", l}, {"r", r}}); });
      });
      break;
    case 7: each("r", 2, [&](int r) { out.push_back({{"l", 2}, {"r", r}}); }); break;
    case 8: each("r", 2, [&](int r) { out.push_back({{"l", 5}, {"r", r}}); }); break;
    default: throw PatternError("no table for theorem " + std::to_string(theorem));
  }
  return out;
}

// Upper bound from the pattern registry (or the solver for coronas); lower
// bound from exhaustive UNSAT, else the counting bound, else skipped.
inline TheoremRow theorem_row(int theorem, const ParamMap& p, const PatternRegistry* reg, const Budget& b) {
  TheoremRow row;
  row.theorem = theorem;
  row.family = theorem_family(theorem);
  row.params = p;
  row.claimed = *claimed_chi(row.family, p);
  Graph g = make_family({row.family, p});
  auto dm = all_pairs_distances(g);

  if (theorem == 3) {
    auto o = decide(g, dm, row.claimed.upper, {}, b);
    if (o.status == Status::kSat) {
      row.upper = row.claimed.upper;
      row.upper_source = "solver SAT k=" + std::to_string(row.upper);
    } else {
      row.upper_source = std::string("solver ") + to_string(o.status) + " k=" + std::to_string(row.claimed.upper);
      row.timeout = o.status == Status::kTimeout;
    }
  } else {
    if (!reg) throw PatternError("theorem table needs a pattern registry");
    auto rep = verify_case(*reg, row.family, p);
    if (rep.valid) {
      row.upper = rep.k_used;
      row.upper_source = rep.case_name;
    } else {
      row.upper_source = rep.case_name + " INVALID";
    }
  }

  std::vector<int> targets{row.claimed.upper};
  if (row.claimed.lower < row.claimed.upper) targets.push_back(row.claimed.lower);
  for (int t : targets) {
    if (t <= 1) {
      row.lower = 1;
      row.lower_source = "trivial";
      break;
    }
    auto o = decide(g, dm, t - 1, {}, b);
    if (o.status == Status::kUnsat) {
      row.lower = t;
      row.lower_source = "UNSAT k=" + std::to_string(t - 1);
      break;
    }
    if (o.status == Status::kTimeout) row.timeout = true;
    if (o.status == Status::kSat) {
      row.lower_source = "SAT k=" + std::to_string(t - 1);
      break;
    }
  }
  if (row.lower == 0) {
    auto p1 = prop1_lower_bound(dm, b);
    if (p1.proven) {
      row.lower = p1.k;
      row.lower_source = row.lower_source.empty() ? "prop1" : row.lower_source + "; prop1";
    } else {
      row.timeout = true;
      row.lower_source = "SKIPPED: budget exhausted";
    }
  }
  row.agreement = row.upper > 0 && row.lower == row.upper && row.claimed.lower <= row.upper &&
                  row.upper <= row.claimed.upper;
  return row;
}

inline std::vector<TheoremRow> theorem_table(int theorem, const ParamRanges& ranges, const PatternRegistry* reg,
                                             const Budget& b) {
  std::vector<TheoremRow> rows;
  for (const auto& p : theorem_params(theorem, ranges)) rows.push_back(theorem_row(theorem, p, reg, b));
  return rows;
}

}  // namespace packcol

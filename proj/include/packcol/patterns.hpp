#pragma once

#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "packcol/families.hpp"
#include "packcol/graph.hpp"
#include "packcol/theorems.hpp"

namespace packcol {

struct RegistryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PatternError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ParamMap = std::map<std::string, int>;
using Grid = std::vector<std::vector<int>>;

inline std::string format_params(const ParamMap& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

// linear:      (p - offset) / divisor
// floor_block: (p - offset - (p mod divisor)) / divisor
struct CountFormula {
  enum class Kind { kLinear, kFloorBlock };
  Kind kind = Kind::kLinear;
  std::string param;
  int offset = 0;
  int divisor = 1;

  std::optional<int> evaluate(const ParamMap& p) const {
    int x = p.at(param) - offset;
    if (kind == Kind::kFloorBlock) x -= p.at(param) % divisor;
    if (x < 0 || x % divisor != 0) return std::nullopt;
    return x / divisor;
  }
};

struct ResidueCondition {
  std::string param;
  int mod = 1;
  int residue = 0;
};

struct PatternSpec {
  std::string family;  // CL, H or GENH
  std::string case_name;
  std::string note;
  ParamMap min_params;
  ParamMap max_params;
  std::vector<ResidueCondition> residues;
  Grid prefix, repeat, suffix;
  std::optional<CountFormula> repeat_count;
  // Row blocks (GENH only): rows [0, row_prefix) once, the next row_repeat rows
  // repeated, the remaining row_suffix rows once.
  int row_prefix = 0, row_repeat = 0, row_suffix = 0;
  std::optional<CountFormula> row_repeat_count;

  bool applies(const ParamMap& p) const {
    for (const auto& [k, v] : min_params)
      if (!p.count(k) || p.at(k) < v) return false;
    for (const auto& [k, v] : max_params)
      if (!p.count(k) || p.at(k) > v) return false;
    for (const auto& r : residues)
      if (!p.count(r.param) || p.at(r.param) % r.mod != r.residue) return false;
    return true;
  }

  int block_rows() const {
    for (const auto* g : {&prefix, &repeat, &suffix})
      if (!g->empty()) return static_cast<int>(g->size());
    return 0;
  }

  bool has_row_blocks() const { return row_repeat_count.has_value(); }
};

inline std::vector<std::string> family_params(const std::string& family) {
  if (family == "CL") return {"n"};
  if (family == "H") return {"r"};
  if (family == "GENH") return {"l", "r"};
  return {};
}

inline int family_columns(const std::string& family, const ParamMap& p) {
  return family == "CL" ? p.at("n") : 2 * p.at("r");
}

inline int family_rows(const std::string& family, const ParamMap& p) {
  if (family == "CL") return 2;
  if (family == "H") return 3;
  return p.at("l") + 2;
}

inline FamilyRequest family_request(const std::string& family, const ParamMap& p) { return {family, p}; }

// Assembles the colour grid (row = u/v(/w) row or level, column = cycle position).
inline Grid assemble(const PatternSpec& s, const ParamMap& p) {
  if (!s.applies(p)) throw PatternError("pattern " + s.case_name + " does not apply to " + format_params(p));
  int reps = 0;
  if (!s.repeat.empty()) {
    auto c = s.repeat_count->evaluate(p);
    if (!c) throw PatternError("pattern " + s.case_name + ": repeat count not integral for " + format_params(p));
    reps = *c;
  }
  Grid rows;
  for (int i = 0; i < s.block_rows(); ++i) {
    std::vector<int> row;
    if (!s.prefix.empty()) row = s.prefix[i];
    for (int t = 0; t < reps; ++t) row.insert(row.end(), s.repeat[i].begin(), s.repeat[i].end());
    if (!s.suffix.empty()) row.insert(row.end(), s.suffix[i].begin(), s.suffix[i].end());
    rows.push_back(std::move(row));
  }
  if (s.has_row_blocks()) {
    auto c = s.row_repeat_count->evaluate(p);
    if (!c) throw PatternError("pattern " + s.case_name + ": row repeat count not integral for " + format_params(p));
    Grid out(rows.begin(), rows.begin() + s.row_prefix);
    for (int t = 0; t < *c; ++t)
      out.insert(out.end(), rows.begin() + s.row_prefix, rows.begin() + s.row_prefix + s.row_repeat);
    out.insert(out.end(), rows.begin() + s.row_prefix + s.row_repeat, rows.end());
    rows = std::move(out);
  }
  return rows;
}

// Vertex ids are row * columns + column in every supported family.
inline Colouring instantiate(const PatternSpec& s, const ParamMap& p) {
  Grid grid = assemble(s, p);
  const int rows = family_rows(s.family, p), cols = family_columns(s.family, p);
  if (static_cast<int>(grid.size()) != rows)
    throw PatternError("pattern " + s.case_name + " assembles " + std::to_string(grid.size()) + " rows, expected " +
                       std::to_string(rows));
  std::vector<int> colours;
  int k = 0;
  for (const auto& row : grid) {
    if (static_cast<int>(row.size()) != cols)
      throw PatternError("pattern " + s.case_name + " assembles " + std::to_string(row.size()) + " columns, expected " +
                         std::to_string(cols));
    for (int c : row) {
      colours.push_back(c);
      k = std::max(k, c);
    }
  }
  return Colouring(std::move(colours), k);
}

class PatternRegistry {
 public:
  std::vector<PatternSpec> entries;
  std::string source;

  std::vector<const PatternSpec*> matches(const std::string& family, const ParamMap& p) const {
    std::vector<const PatternSpec*> out;
    for (const auto& e : entries)
      if (e.family == family && e.applies(p)) out.push_back(&e);
    return out;
  }

  const PatternSpec& match(const std::string& family, const ParamMap& p) const {
    auto m = matches(family, p);
    if (m.empty()) throw PatternError("no pattern applies to " + family + " " + format_params(p));
    if (m.size() > 1) throw PatternError("several patterns apply to " + family + " " + format_params(p));
    return *m.front();
  }

  const PatternSpec* find(const std::string& case_name) const {
    for (const auto& e : entries)
      if (e.case_name == case_name) return &e;
    return nullptr;
  }
};

namespace detail {

using nlohmann::json;

// Parameter boxes used for load-time enumeration: from each minimum, this many values up.
inline constexpr int kCheckSpan = 48;

inline void for_each_params(const std::vector<std::string>& names, const ParamMap& lo, const ParamMap& hi,
                            const std::function<void(const ParamMap&)>& f) {
  ParamMap p;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == names.size()) return f(p);
    for (int v = lo.at(names[i]); v <= hi.at(names[i]); ++v) {
      p[names[i]] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

class SpecParser {
 public:
  explicit SpecParser(std::string where) : where_(std::move(where)) {}

  [[noreturn]] void fail(const std::string& at, const std::string& what) const {
    throw RegistryError(where_ + (at.empty() ? "" : "." + at) + ": " + what);
  }

  const json& need(const json& j, const char* key) const {
    if (!j.contains(key)) fail(key, "missing field");
    return j.at(key);
  }

  int integer(const json& j, const std::string& at) const {
    if (!j.is_number_integer()) fail(at, "expected integer");
    return j.get<int>();
  }

  ParamMap params(const json& j, const std::string& at, const std::vector<std::string>& allowed) const {
    if (!j.is_object()) fail(at, "expected object");
    ParamMap p;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) fail(at + "." + it.key(), "unknown parameter");
      p[it.key()] = integer(it.value(), at + "." + it.key());
    }
    return p;
  }

  Grid grid(const json& j, const std::string& at) const {
    if (!j.is_array()) fail(at, "expected array of rows");
    Grid g;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const auto& row = j[i];
      std::string ra = at + "[" + std::to_string(i) + "]";
      if (!row.is_array() || row.empty()) fail(ra, "expected non-empty array of colours");
      std::vector<int> r;
      for (std::size_t c = 0; c < row.size(); ++c) {
        int v = integer(row[c], ra + "[" + std::to_string(c) + "]");
        if (v < 1) fail(ra + "[" + std::to_string(c) + "]", "colours must be at least 1");
        r.push_back(v);
      }
      if (!g.empty() && r.size() != g.front().size()) fail(ra, "rows of one grid must have equal length");
      g.push_back(std::move(r));
    }
    return g;
  }

  CountFormula formula(const json& j, const std::string& at, const std::vector<std::string>& allowed) const {
    if (!j.is_object()) fail(at, "expected object");
    CountFormula f;
    std::string kind = need(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (kind == "linear")
      f.kind = CountFormula::Kind::kLinear;
    else if (kind == "floor_block")
      f.kind = CountFormula::Kind::kFloorBlock;
    else
      fail(at + ".kind", "expected \"linear\" or \"floor_block\"");
    if (!need(j, "param").is_string()) fail(at + ".param", "expected string");
    f.param = j.at("param").get<std::string>();
    if (std::find(allowed.begin(), allowed.end(), f.param) == allowed.end()) fail(at + ".param", "unknown parameter");
    f.offset = integer(need(j, "offset"), at + ".offset");
    f.divisor = integer(need(j, "divisor"), at + ".divisor");
    if (f.divisor < 1) fail(at + ".divisor", "must be positive");
    return f;
  }

  PatternSpec spec(const json& j) const {
    if (!j.is_object()) fail("", "expected object");
    PatternSpec s;
    if (!need(j, "family").is_string()) fail("family", "expected string");
    s.family = j.at("family").get<std::string>();
    auto names = family_params(s.family);
    if (names.empty()) fail("family", "unknown family " + s.family);
    if (!need(j, "case_name").is_string()) fail("case_name", "expected string");
    s.case_name = j.at("case_name").get<std::string>();
    if (j.contains("note")) s.note = j.at("note").get<std::string>();
    s.min_params = params(need(j, "min_params"), "min_params", names);
    for (const auto& n : names)
      if (!s.min_params.count(n)) fail("min_params", "missing minimum for " + n);
    if (j.contains("max_params")) s.max_params = params(j.at("max_params"), "max_params", names);
    if (j.contains("residues")) {
      const auto& rs = j.at("residues");
      if (!rs.is_array()) fail("residues", "expected array");
      for (std::size_t i = 0; i < rs.size(); ++i) {
        std::string at = "residues[" + std::to_string(i) + "]";
        ResidueCondition r;
        if (!need(rs[i], "param").is_string()) fail(at + ".param", "expected string");
        r.param = rs[i].at("param").get<std::string>();
        if (std::find(names.begin(), names.end(), r.param) == names.end()) fail(at + ".param", "unknown parameter");
        r.mod = integer(need(rs[i], "mod"), at + ".mod");
        r.residue = integer(need(rs[i], "residue"), at + ".residue");
        if (r.mod < 1 || r.residue < 0 || r.residue >= r.mod) fail(at, "residue must lie in [0, mod)");
        s.residues.push_back(r);
      }
    }
    s.prefix = grid(need(j, "prefix"), "prefix");
    s.repeat = grid(need(j, "repeat"), "repeat");
    s.suffix = grid(need(j, "suffix"), "suffix");
    int rows = -1;
    for (auto [g, at] : {std::pair{&s.prefix, "prefix"}, {&s.repeat, "repeat"}, {&s.suffix, "suffix"}}) {
      if (g->empty()) continue;
      if (rows >= 0 && static_cast<int>(g->size()) != rows) fail(at, "row count differs from other blocks");
      rows = static_cast<int>(g->size());
    }
    if (rows < 0) fail("", "all blocks are empty");
    if (!s.repeat.empty()) s.repeat_count = formula(need(j, "repeat_count_formula"), "repeat_count_formula", names);
    if (s.repeat.empty() && j.contains("repeat_count_formula")) fail("repeat_count_formula", "given without a repeat block");
    bool any_row = j.contains("row_prefix") || j.contains("row_repeat") || j.contains("row_suffix") ||
                   j.contains("row_repeat_count_formula");
    if (any_row) {
      if (s.family != "GENH") fail("row_repeat", "row blocks are only allowed for GENH");
      s.row_prefix = integer(need(j, "row_prefix"), "row_prefix");
      s.row_repeat = integer(need(j, "row_repeat"), "row_repeat");
      s.row_suffix = integer(need(j, "row_suffix"), "row_suffix");
      s.row_repeat_count = formula(need(j, "row_repeat_count_formula"), "row_repeat_count_formula", names);
      if (s.row_prefix < 0 || s.row_repeat < 1 || s.row_suffix < 0 || s.row_prefix + s.row_repeat + s.row_suffix != rows)
        fail("row_repeat", "row blocks must partition the " + std::to_string(rows) + " grid rows");
    } else if (s.family == "CL" && rows != 2) {
      fail("prefix", "CL patterns need 2 rows, found " + std::to_string(rows));
    } else if (s.family == "H" && rows != 3) {
      fail("prefix", "H patterns need 3 rows, found " + std::to_string(rows));
    }
    return s;
  }

 private:
  std::string where_;
};

inline ParamMap check_box_high(const PatternSpec& s) {
  ParamMap hi;
  for (const auto& [k, v] : s.min_params) hi[k] = s.max_params.count(k) ? s.max_params.at(k) : v + kCheckSpan;
  return hi;
}

// Every applicable parameter choice in the check box must assemble to the family's exact dimensions.
inline void check_formulas(const PatternSpec& s, const std::string& where) {
  bool any = false;
  for_each_params(family_params(s.family), s.min_params, check_box_high(s), [&](const ParamMap& p) {
    if (!s.applies(p)) return;
    any = true;
    try {
      instantiate(s, p);
    } catch (const PatternError& e) {
      throw RegistryError(where + ": " + e.what());
    }
  });
  if (!any) throw RegistryError(where + ": applicability is empty");
}

inline void check_overlap(const PatternSpec& a, const PatternSpec& b) {
  ParamMap lo, hi;
  for (const auto& n : family_params(a.family)) {
    lo[n] = std::max(a.min_params.at(n), b.min_params.at(n));
    int ha = a.max_params.count(n) ? a.max_params.at(n) : lo[n] + kCheckSpan;
    int hb = b.max_params.count(n) ? b.max_params.at(n) : lo[n] + kCheckSpan;
    hi[n] = std::min(ha, hb);
  }
  for_each_params(family_params(a.family), lo, hi, [&](const ParamMap& p) {
    if (a.applies(p) && b.applies(p))
      throw RegistryError("patterns " + a.case_name + " and " + b.case_name + " both apply to " + a.family + " " +
                          format_params(p));
  });
}

}  // namespace detail

inline PatternRegistry parse_registry(const std::string& text, const std::string& source = "<registry>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw RegistryError(source + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || j.at("schema") != 1)
    throw RegistryError(source + ": expected an object with \"schema\": 1");
  if (!j.contains("patterns") || !j.at("patterns").is_array()) throw RegistryError(source + ": missing patterns array");
  PatternRegistry reg;
  reg.source = source;
  const auto& arr = j.at("patterns");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    std::string where = "patterns[" + std::to_string(i) + "]";
    auto s = detail::SpecParser(where).spec(arr[i]);
    if (reg.find(s.case_name)) throw RegistryError(where + ".case_name: duplicate " + s.case_name);
    detail::check_formulas(s, where + " (" + s.case_name + ")");
    reg.entries.push_back(std::move(s));
  }
  for (std::size_t a = 0; a < reg.entries.size(); ++a)
    for (std::size_t b = a + 1; b < reg.entries.size(); ++b)
      if (reg.entries[a].family == reg.entries[b].family) detail::check_overlap(reg.entries[a], reg.entries[b]);
  return reg;
}

inline PatternRegistry load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RegistryError("cannot open registry " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_registry(ss.str(), path);
}

struct CaseReport {
  std::string family;
  ParamMap params;
  std::string case_name;
  int k_used = 0;
  std::optional<ClaimedValue> claimed;
  bool valid = false;
  std::optional<Violation> violation;
  std::optional<Colouring> colouring;

  bool matches_claim() const { return claimed && k_used == claimed->upper; }
};

inline CaseReport verify_case(const PatternRegistry& reg, const std::string& family, const ParamMap& p) {
  const auto& spec = reg.match(family, p);
  CaseReport r;
  r.family = family;
  r.params = p;
  r.case_name = spec.case_name;
  Colouring c = instantiate(spec, p);
  Graph g = make_family(family_request(family, p));
  auto rep = is_packing_colouring(g, c);
  r.k_used = c.max_colour();
  r.claimed = claimed_chi(family, p);
  r.valid = rep.valid();
  r.violation = rep.violation;
  r.colouring = std::move(c);
  return r;
}

struct SweepFailure : PatternError {
  CaseReport report;
  SweepFailure(const std::string& what, CaseReport r) : PatternError(what), report(std::move(r)) {}
};

using ParamRanges = std::map<std::string, std::pair<int, int>>;

// Verifies every parameter choice in the ranges; the first invalid row or
// claim mismatch aborts with SweepFailure.
inline std::vector<CaseReport> sweep(const PatternRegistry& reg, const std::string& family, const ParamRanges& ranges,
                                     const std::function<bool(const ParamMap&)>& include = {}) {
  auto names = family_params(family);
  if (names.empty()) throw PatternError("no patterns for family " + family);
  ParamMap lo, hi;
  for (const auto& n : names) {
    auto it = ranges.find(n);
    if (it == ranges.end()) throw PatternError("sweep needs a range for " + n);
    lo[n] = it->second.first;
    hi[n] = it->second.second;
  }
  std::vector<CaseReport> rows;
  detail::for_each_params(names, lo, hi, [&](const ParamMap& p) {
    if (include && !include(p)) return;
    auto r = verify_case(reg, family, p);
    r.colouring.reset();
    if (!r.valid) {
      const auto& v = *r.violation;
      throw SweepFailure(r.case_name + " invalid at " + family + " " + format_params(p) + ": vertices " +
                             std::to_string(v.u) + " and " + std::to_string(v.v) + " share colour " +
                             std::to_string(v.colour),
                         r);
    }
    if (!r.matches_claim())
      throw SweepFailure(r.case_name + " uses " + std::to_string(r.k_used) + " colours at " + family + " " +
                             format_params(p) + ", claim differs",
                         r);
    rows.push_back(std::move(r));
  });
  return rows;
}

}  // namespace packcol

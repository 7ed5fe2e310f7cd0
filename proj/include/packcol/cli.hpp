#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "packcol/certificate.hpp"
#include "packcol/claims.hpp"
#include "packcol/families.hpp"
#include "packcol/graph_io.hpp"
#include "packcol/packings.hpp"
#include "packcol/patterns.hpp"
#include "packcol/solver.hpp"
#include "packcol/table.hpp"

#ifndef PACKCOL_DEFAULT_REGISTRY
#define PACKCOL_DEFAULT_REGISTRY "data/patterns.json"
#endif

namespace packcol::cli {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kTimedOut = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using nlohmann::json;

inline std::pair<int, int> parse_range(const std::string& s, const std::string& flag) {
  static const std::regex re(R"(\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw UsageError(flag + ": expected N or A..B, got '" + s + "'");
  int a = std::stoi(m[1]);
  int b = m[2].matched ? std::stoi(m[2]) : a;
  if (a > b) throw UsageError(flag + ": empty range " + s);
  return {a, b};
}

// Accepts a vertex id or a label such as u_3, v_0 or u^2_5.
inline Vertex parse_vertex(const Graph& g, const std::string& s) {
  static const std::regex id(R"(\d+)");
  static const std::regex lab(R"(([A-Za-z]+)(?:\^(\d+))?_(\d+))");
  std::smatch m;
  Vertex v = -1;
  if (std::regex_match(s, id)) {
    v = std::stoi(s);
  } else if (std::regex_match(s, m, lab)) {
    Label l{m[1], m[2].matched ? std::stoi(m[2]) : -1, std::stoi(m[3])};
    auto f = g.find(l);
    if (!f) throw UsageError("no vertex labelled " + s);
    v = *f;
  } else {
    throw UsageError("cannot parse vertex '" + s + "'");
  }
  if (v < 0 || v >= g.order()) throw UsageError("vertex " + s + " out of range");
  return v;
}

inline std::pair<Vertex, int> parse_assignment(const Graph& g, const std::string& s) {
  auto eq = s.rfind('=');
  if (eq == std::string::npos) throw UsageError("expected v=c, got '" + s + "'");
  try {
    return {parse_vertex(g, s.substr(0, eq)), std::stoi(s.substr(eq + 1))};
  } catch (const std::invalid_argument&) {
    throw UsageError("expected v=c, got '" + s + "'");
  }
}

// Edge groups for --edge-require-one, read off the family labels.
inline std::vector<Edge> select_edges(const Graph& g, const std::string& which) {
  if (which == "all") return g.edges();
  if (which != "top-cycle" && which != "rungs") throw UsageError("--edge-require-one expects all, top-cycle or rungs");
  std::string fam = g.family_tag().substr(0, g.family_tag().find(' '));
  int top_level = 0;
  for (const auto& l : g.labels()) top_level = std::max(top_level, l.level);
  std::vector<Edge> out;
  for (auto [u, v] : g.edges()) {
    const auto& a = g.label(u);
    const auto& b = g.label(v);
    bool pick = false;
    if (which == "top-cycle") {
      pick = a.role == "u" && b.role == "u" && a.level == b.level && a.level <= 0;
    } else if (fam == "CL" || fam == "X") {
      pick = a.column == b.column;
    } else if (fam == "H") {
      pick = a.role == "v" && b.role == "v";
    } else if (fam == "GENH") {
      pick = a.level == b.level && a.level >= 1 && a.level < top_level;
    }
    if (pick) out.push_back({u, v});
  }
  if (out.empty()) throw UsageError("--edge-require-one " + which + " selects no edges of this graph");
  return out;
}

struct GraphArgs {
  std::string family, n, r, l, first, last, file;

  void add(CLI::App* app) {
    app->add_option("--family", family, "P, C, K, CL, CORONA, H, GENH, X or WINDOW");
    app->add_option("--n", n, "order parameter");
    app->add_option("--r", r, "H-graph parameter");
    app->add_option("--l", l, "number of interior levels");
    app->add_option("--first", first, "first window column");
    app->add_option("--last", last, "last window column");
    app->add_option("--graph", file, "graph text file");
  }

  std::pair<GraphSource, Graph> load() const {
    if (!file.empty() && !family.empty()) throw UsageError("give either --family or --graph, not both");
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw UsageError("cannot read " + file);
      return {GraphSource{std::nullopt, file}, read_graph_text(in)};
    }
    if (family.empty()) throw UsageError("a graph is required: --family or --graph");
    FamilyRequest req{family, {}};
    auto put = [&](const char* name, const std::string& v) {
      if (!v.empty()) req.params[name] = parse_range(v, std::string("--") + name).first;
    };
    put("n", n);
    put("r", r);
    put("l", l);
    put("first", first);
    put("last", last);
    try {
      return {GraphSource{req, ""}, make_family(req)};
    } catch (const GraphError& e) {
      throw UsageError(e.what());
    }
  }
};

struct BudgetArgs {
  std::uint64_t max_nodes = 0;
  std::int64_t max_millis = 0;
  int threads = 0;

  void add(CLI::App* app) {
    app->add_option("--max-nodes", max_nodes, "node cap (0 = unlimited)");
    app->add_option("--max-millis", max_millis, "wall-clock cap in ms (0 = unlimited)");
    app->add_option("--threads", threads, "worker threads (default PACKCOL_THREADS or 1)");
  }

  Budget budget() const {
    Budget b;
    if (max_nodes) b.max_nodes = max_nodes;
    if (max_millis) b.max_millis = max_millis;
    return b;
  }

  int thread_count() const {
    if (threads > 0) return threads;
    if (const char* e = std::getenv("PACKCOL_THREADS")) {
      int t = std::atoi(e);
      if (t > 0) return t;
    }
    return 1;
  }
};

inline std::string registry_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* e = std::getenv("PACKCOL_REGISTRY")) return e;
  return PACKCOL_DEFAULT_REGISTRY;
}

inline json violation_json(const Graph& g, const std::optional<Violation>& v) {
  if (!v) return nullptr;
  return {{"u", g.name(v->u)}, {"v", g.name(v->v)}, {"colour", v->colour}};
}

inline json case_json(const CaseReport& r) {
  json j{{"family", r.family}, {"params", r.params}, {"case", r.case_name}, {"k_used", r.k_used}, {"valid", r.valid}};
  if (r.claimed) j["claimed"] = r.claimed->exact() ? json(r.claimed->upper) : json{r.claimed->lower, r.claimed->upper};
  if (r.violation) j["violation"] = {{"u", r.violation->u}, {"v", r.violation->v}, {"colour", r.violation->colour}};
  return j;
}

inline json subcheck_json(const std::string& claim, const SubCheck& s) {
  json j{{"claim", claim}, {"check", s.name}, {"status", to_string(s.status)}, {"nodes", s.nodes}, {"millis", s.millis}};
  if (s.witness) j["witness"] = s.witness->colours;
  return j;
}

inline json row_json(const TheoremRow& r) {
  json claimed = r.claimed.exact() ? json(r.claimed.upper) : json{r.claimed.lower, r.claimed.upper};
  return {{"theorem", r.theorem}, {"family", r.family}, {"params", r.params}, {"claimed", claimed},
          {"upper", r.upper},     {"upper_source", r.upper_source}, {"lower", r.lower},
          {"lower_source", r.lower_source}, {"agreement", r.agreement}, {"timeout", r.timeout}};
}

class Printer {
 public:
  Printer(std::ostream& out, bool pretty) : out_(out), pretty_(pretty) {}

  void emit(const json& j) {
    if (pretty_)
      out_ << j.dump(2) << '\n';
    else
      out_ << j.dump() << '\n';
  }

  bool pretty() const { return pretty_; }
  std::ostream& stream() { return out_; }

 private:
  std::ostream& out_;
  bool pretty_;
};

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path);
  f << j.dump(2) << '\n';
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact packing-colouring toolkit"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "human-readable output");

  GraphArgs ga;
  BudgetArgs ba;

  auto* gen = app.add_subcommand("generate", "write a family graph in text format");
  ga.add(gen);
  std::string gen_out;
  gen->add_option("--out", gen_out, "output file (default stdout)");

  auto* chi = app.add_subcommand("chi", "compute the packing chromatic number");
  ga.add(chi);
  ba.add(chi);
  std::string cert_out;
  chi->add_option("--out", cert_out, "write the SAT certificate to this file");

  auto* dec = app.add_subcommand("decide", "decide packing k-colourability");
  ga.add(dec);
  ba.add(dec);
  int k = 0;
  std::vector<std::string> fixes, forbids;
  std::string require_one, expect;
  dec->add_option("--k", k, "colour budget")->required();
  dec->add_option("--fix", fixes, "fix vertex colour, v=c");
  dec->add_option("--forbid", forbids, "forbid vertex colour, v=c");
  dec->add_option("--edge-require-one", require_one, "all, top-cycle or rungs");
  dec->add_option("--expect", expect, "sat or unsat; mismatch exits 1");
  dec->add_option("--out", cert_out, "write the certificate to this file");

  auto* rho = app.add_subcommand("rho", "maximum i-packings");
  ga.add(rho);
  ba.add(rho);
  int rho_i = 0, rho_k = 0;
  rho->add_option("--i", rho_i, "single packing index");
  rho->add_option("--k", rho_k, "compute rho_1..rho_k");

  auto* ver = app.add_subcommand("verify", "revalidate a certificate file");
  std::string cert_in, ver_graph;
  ver->add_option("--certificate", cert_in, "certificate JSON")->required();
  ver->add_option("--graph", ver_graph, "graph text file (overrides the certificate's source)");

  auto* pat = app.add_subcommand("pattern", "pattern registry");
  pat->require_subcommand(1);
  std::string registry, pfam, pn, pr, pl;
  auto pattern_opts = [&](CLI::App* a) {
    a->add_option("--registry", registry, "registry JSON (default PACKCOL_REGISTRY or the shipped file)");
    a->add_option("--family", pfam, "CL, H or GENH")->required();
    a->add_option("--n", pn, "n or A..B");
    a->add_option("--r", pr, "r or A..B");
    a->add_option("--l", pl, "l or A..B");
  };
  auto* pver = pat->add_subcommand("verify", "verify one parameter choice");
  pattern_opts(pver);
  auto* psw = pat->add_subcommand("sweep", "verify a parameter range");
  pattern_opts(psw);

  auto* cl = app.add_subcommand("claims", "lemma checks");
  cl->require_subcommand(1);
  auto* crun = cl->add_subcommand("run", "run one claim check");
  std::string cname;
  int cl_l = 3, cl_r = 0;
  bool all_edges = false;
  crun->add_option("--name", cname, "lemma3, lemma6, lemma7, appendixB or lemma11")->required();
  crun->add_option("--l", cl_l, "levels (default 3)");
  crun->add_option("--r", cl_r, "r (default 4)");
  crun->add_flag("--all-edges", all_edges, "check every edge instead of symmetry representatives");
  ba.add(crun);

  auto* tab = app.add_subcommand("table", "reproduce a theorem's value table");
  int theorem = 0;
  tab->add_option("--theorem", theorem, "3 to 8")->required();
  tab->add_option("--registry", registry, "registry JSON");
  tab->add_option("--n", pn, "n range A..B");
  tab->add_option("--r", pr, "r range A..B");
  tab->add_option("--l", pl, "l range A..B");
  ba.add(tab);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  Printer p(out, pretty);
  try {
    if (*gen) {
      auto [src, g] = ga.load();
      if (gen_out.empty()) {
        write_graph_text(out, g);
      } else {
        std::ofstream f(gen_out);
        if (!f) throw UsageError("cannot write " + gen_out);
        write_graph_text(f, g);
      }
      return kOk;
    }

    if (*chi) {
      auto [src, g] = ga.load();
      SolverOptions opt;
      opt.threads = ba.thread_count();
      auto r = chi_rho(g, ba.budget(), opt);
      json j{{"graph", graph_json(src, g)},
             {"status", r.status == Status::kSat ? "EXACT" : "TIMEOUT"},
             {"lower", r.lower},
             {"upper", r.upper},
             {"prop1", r.prop1.proven ? json(r.prop1.k) : json(nullptr)},
             {"nodes", r.nodes},
             {"millis", r.millis}};
      if (r.status == Status::kSat) j["value"] = r.value;
      if (r.certificate) {
        SolveOutcome sat;
        for (auto& [kk, o] : r.steps)
          if (o.status == Status::kSat) sat = o;
        auto cert = make_certificate(src, g, r.upper, {}, sat);
        j["certificate"] = cert;
        if (!cert_out.empty()) write_json_file(cert_out, cert);
      }
      if (r.below)
        j["below"] = {{"k", r.value - 1}, {"status", to_string(r.below->status)}, {"nodes", r.below->nodes},
                      {"millis", r.below->millis}};
      p.emit(j);
      return r.status == Status::kSat ? kOk : kTimedOut;
    }

    if (*dec) {
      auto [src, g] = ga.load();
      ConstraintSet cs;
      for (const auto& s : fixes) {
        auto [v, c] = parse_assignment(g, s);
        cs.fixed[v] = c;
      }
      for (const auto& s : forbids) {
        auto [v, c] = parse_assignment(g, s);
        cs.forbidden[v].insert(c);
      }
      if (!require_one.empty()) {
        if (!g.has_labels() && require_one != "all") throw UsageError("--edge-require-one " + require_one + " needs a family graph");
        cs.edge_require_one = select_edges(g, require_one);
      }
      try {
        cs.validate(g, k);
      } catch (const ConstraintError& e) {
        throw UsageError(e.what());
      }
      SolverOptions opt;
      opt.threads = ba.thread_count();
      auto o = decide(g, k, cs, ba.budget(), opt);
      auto cert = make_certificate(src, g, k, cs, o);
      if (!cert_out.empty()) write_json_file(cert_out, cert);
      p.emit(cert);
      if (o.status == Status::kTimeout) return kTimedOut;
      if (!expect.empty()) {
        if (expect != "sat" && expect != "unsat") throw UsageError("--expect takes sat or unsat");
        bool want_sat = expect == "sat";
        if (want_sat != (o.status == Status::kSat)) return kFailed;
      }
      return kOk;
    }

    if (*rho) {
      auto [src, g] = ga.load();
      if ((rho_i > 0) == (rho_k > 0)) throw UsageError("give exactly one of --i and --k");
      auto dm = all_pairs_distances(g);
      int lo = rho_i > 0 ? rho_i : 1, hi = rho_i > 0 ? rho_i : rho_k;
      bool all_proven = true;
      for (int i = lo; i <= hi; ++i) {
        auto r = max_i_packing(dm, i, ba.budget());
        all_proven = all_proven && r.proven;
        std::vector<std::string> names;
        for (Vertex v : r.witness) names.push_back(g.name(v));
        p.emit({{"graph", graph_json(src, g)}, {"i", i}, {"rho", r.size}, {"witness", names},
                {"proven", r.proven}, {"nodes", r.nodes}, {"millis", r.millis}});
      }
      return all_proven ? kOk : kTimedOut;
    }

    if (*ver) {
      std::ifstream f(cert_in);
      if (!f) throw UsageError("cannot read " + cert_in);
      json cert;
      try {
        cert = json::parse(f);
      } catch (const json::parse_error& e) {
        throw UsageError(cert_in + ": " + e.what());
      }
      Graph g;
      std::string gfile = ver_graph;
      if (gfile.empty() && cert.contains("graph") && cert["graph"].contains("file")) gfile = cert["graph"]["file"];
      if (!gfile.empty()) {
        std::ifstream gi(gfile);
        if (!gi) throw UsageError("cannot read " + gfile);
        g = read_graph_text(gi);
      } else if (cert.contains("graph") && cert["graph"].contains("family")) {
        FamilyRequest req{cert["graph"]["family"], cert["graph"]["params"].get<std::map<std::string, int>>()};
        g = make_family(req);
      } else {
        throw UsageError("certificate names no graph");
      }
      auto res = verify_certificate(cert, g);
      p.emit({{"certificate", cert_in}, {"result", res.valid ? "VALID" : "INVALID"}, {"reason", res.reason}});
      return res.valid ? kOk : kFailed;
    }

    if (*pat) {
      auto reg = load_registry(registry_path(registry));
      ParamRanges ranges;
      auto put = [&](const char* name, const std::string& v) {
        if (!v.empty()) ranges[name] = parse_range(v, std::string("--") + name);
      };
      put("n", pn);
      put("r", pr);
      put("l", pl);
      if (*pver) {
        ParamMap params;
        for (auto& [name, rg] : ranges) params[name] = rg.first;
        for (const auto& need : family_params(pfam))
          if (!params.count(need)) throw UsageError("--" + need + " is required for " + pfam);
        auto r = verify_case(reg, pfam, params);
        if (p.pretty() && r.colouring) {
          out << pfam << ' ' << format_params(params) << "  " << r.case_name << "  k=" << r.k_used
              << (r.valid ? "  valid" : "  INVALID") << '\n';
          int cols = family_columns(pfam, params);
          for (int i = 0; i < r.colouring->size(); ++i)
            out << std::setw(3) << r.colouring->colours[i] << ((i + 1) % cols == 0 ? "\n" : "");
        } else {
          p.emit(case_json(r));
        }
        return r.valid && r.matches_claim() ? kOk : kFailed;
      }
      try {
        auto rows = sweep(reg, pfam, ranges);
        if (!p.pretty())
          for (const auto& r : rows) p.emit(case_json(r));
        else
          for (const auto& r : rows)
            out << std::left << std::setw(16) << format_params(r.params) << std::setw(24) << r.case_name << " k=" << r.k_used
                << " valid\n";
        p.emit({{"summary", "sweep"}, {"family", pfam}, {"rows", rows.size()}, {"valid", true}});
        return kOk;
      } catch (const SweepFailure& e) {
        p.emit(case_json(e.report));
        p.emit({{"summary", "sweep"}, {"family", pfam}, {"valid", false}, {"error", e.what()}});
        return kFailed;
      }
    }

    if (*cl) {
      ClaimOptions opt;
      opt.budget = ba.budget();
      opt.all_edges = all_edges;
      opt.threads = ba.thread_count();
      int r = cl_r ? cl_r : 4;
      ClaimReport rep;
      if (cname == "lemma3")
        rep = check_lemma_graphX(opt);
      else if (cname == "lemma6")
        rep = check_lemma6_hgraph(r, opt);
      else if (cname == "lemma7")
        rep = check_lemma7(cl_l, r, opt);
      else if (cname == "appendixB")
        rep = check_appendixB(cl_l, r, opt);
      else if (cname == "lemma11")
        rep = check_level0_no45(cl_l, r, opt);
      else
        throw UsageError("unknown claim " + cname);
      for (const auto& s : rep.checks) p.emit(subcheck_json(rep.name, s));
      p.emit({{"claim", rep.name}, {"graph", rep.graph}, {"status", to_string(rep.status)}});
      if (rep.status == ClaimStatus::kCounterexample) return kFailed;
      if (rep.status == ClaimStatus::kTimeout) return kTimedOut;
      return kOk;
    }

    if (*tab) {
      ParamRanges ranges;
      auto put = [&](const char* name, const std::string& v) {
        if (!v.empty()) ranges[name] = parse_range(v, std::string("--") + name);
      };
      put("n", pn);
      put("r", pr);
      put("l", pl);
      if (theorem < 3 || theorem > 8) throw UsageError("--theorem must be 3..8");
      std::optional<PatternRegistry> reg;
      if (theorem != 3) reg = load_registry(registry_path(registry));
      std::vector<TheoremRow> rows;
      try {
        rows = theorem_table(theorem, ranges, reg ? &*reg : nullptr, ba.budget());
      } catch (const PatternError& e) {
        throw UsageError(e.what());
      }
      bool failed = false, timed = false;
      for (const auto& r : rows) {
        if (p.pretty()) {
          std::string claimed = r.claimed.exact() ? std::to_string(r.claimed.upper)
                                                  : std::to_string(r.claimed.lower) + "-" + std::to_string(r.claimed.upper);
          out << std::left << std::setw(12) << format_params(r.params) << " claimed " << std::setw(4) << claimed << " upper "
              << r.upper << " (" << r.upper_source << ")  lower " << r.lower << " (" << r.lower_source << ")  "
              << (r.agreement ? "agree" : (r.timeout ? "timeout" : "DISAGREE")) << '\n';
        } else {
          p.emit(row_json(r));
        }
        if (!r.agreement) (r.timeout ? timed : failed) = true;
      }
      if (failed) return kFailed;
      return timed ? kTimedOut : kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RegistryError& e) {
    err << "registry error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace packcol::cli

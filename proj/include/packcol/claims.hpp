#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "packcol/families.hpp"
#include "packcol/solver.hpp"

namespace packcol {

// kVacuous: no colouring meets the check's hypothesis.
// kVacuousStrong: the graph has no packing 5-colouring at all.
enum class ClaimStatus { kVerified, kCounterexample, kTimeout, kVacuous, kVacuousStrong };

inline const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::kVerified: return "VERIFIED";
    case ClaimStatus::kCounterexample: return "COUNTEREXAMPLE";
    case ClaimStatus::kTimeout: return "TIMEOUT";
    case ClaimStatus::kVacuous: return "VACUOUS";
    case ClaimStatus::kVacuousStrong: return "VACUOUS-STRONG";
  }
  return "?";
}

struct SubCheck {
  std::string name;
  ClaimStatus status = ClaimStatus::kTimeout;
  std::uint64_t nodes = 0;
  double millis = 0;
  std::optional<Colouring> witness;
};

struct ClaimReport {
  std::string name;
  std::string graph;
  ClaimStatus status = ClaimStatus::kTimeout;
  std::vector<SubCheck> checks;
};

struct ClaimOptions {
  Budget budget;
  bool all_edges = false;
  int threads = 1;
};

struct ClaimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<SubCheck> run_checks(const std::vector<std::function<SubCheck()>>& jobs, int threads) {
  std::vector<SubCheck> out(jobs.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i]();
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) out[i] = jobs[i]();
    });
  for (auto& t : pool) t.join();
  return out;
}

// Conjunction of sub-checks; all-vacuous collapses to kVacuous.
inline ClaimStatus aggregate(const std::vector<SubCheck>& checks) {
  bool timeout = false, all_vacuous = !checks.empty();
  for (const auto& c : checks) {
    if (c.status == ClaimStatus::kCounterexample) return ClaimStatus::kCounterexample;
    if (c.status == ClaimStatus::kTimeout) timeout = true;
    if (c.status != ClaimStatus::kVacuous) all_vacuous = false;
  }
  if (timeout) return ClaimStatus::kTimeout;
  return all_vacuous ? ClaimStatus::kVacuous : ClaimStatus::kVerified;
}

inline SubCheck expect_unsat(const std::string& name, const Graph& g, const DistanceMatrix& dm, int k,
                             const ConstraintSet& cs, const Budget& b) {
  auto o = decide(g, dm, k, cs, b);
  SubCheck s{name, ClaimStatus::kVerified, o.nodes, o.millis, std::nullopt};
  if (o.status == Status::kSat) {
    s.status = ClaimStatus::kCounterexample;
    s.witness = o.witness;
  } else if (o.status == Status::kTimeout) {
    s.status = ClaimStatus::kTimeout;
  }
  return s;
}

// Exhaustive violation search that reports kVacuous when no colouring meets cs.
inline SubCheck expect_none(const std::string& name, const Graph& g, const DistanceMatrix& dm, int k,
                            const ConstraintSet& cs, const Predicate& pred, const Budget& b,
                            const std::vector<Vertex>& support) {
  auto v = find_colouring_violating(g, dm, k, cs, pred, b, support);
  SubCheck s{name, ClaimStatus::kVerified, v.nodes, v.millis, std::nullopt};
  if (v.kind == ViolationSearch::Kind::kFound) {
    s.status = ClaimStatus::kCounterexample;
    s.witness = v.witness;
  } else if (v.kind == ViolationSearch::Kind::kTimeout) {
    s.status = ClaimStatus::kTimeout;
  } else {
    auto o = decide(g, dm, k, cs, b);
    s.nodes += o.nodes;
    s.millis += o.millis;
    if (o.status == Status::kUnsat) s.status = ClaimStatus::kVacuous;
    if (o.status == Status::kTimeout) s.status = ClaimStatus::kTimeout;
  }
  return s;
}

inline std::vector<Vertex> closed_neighbourhood(const Graph& g, std::initializer_list<Vertex> vs) {
  std::vector<Vertex> out;
  for (Vertex v : vs) {
    out.push_back(v);
    for (Vertex w : g.neighbours(v)) out.push_back(w);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

// One of a, b has colour 2 and its three neighbours carry 3, 4 and 5.
inline bool rung_conclusion(const Graph& g, const Colouring& c, Vertex a, Vertex b) {
  for (Vertex x : {a, b}) {
    if (c[x] != 2 || g.degree(x) != 3) continue;
    std::vector<int> cols;
    for (Vertex w : g.neighbours(x)) cols.push_back(c[w]);
    std::sort(cols.begin(), cols.end());
    if (cols == std::vector<int>{3, 4, 5}) return true;
  }
  return false;
}

inline ConstraintSet both_not_one(Vertex a, Vertex b) {
  ConstraintSet cs;
  cs.forbidden[a] = {1};
  cs.forbidden[b] = {1};
  return cs;
}

// Rungs u_i v_i of X, i = 3, 4, 5, without colour 1: one endpoint is a 2 whose
// neighbours carry 3, 4, 5. Also the weaker "2 on the rung" claim.
inline ClaimReport check_lemma_graphX(const Graph& x, const ClaimOptions& opt = {}) {
  auto dm = all_pairs_distances(x);
  std::vector<std::function<SubCheck()>> jobs;
  for (int i = 3; i <= 5; ++i) {
    Vertex a = x.at({"u", -1, i}), b = x.at({"v", -1, i});
    auto cs = both_not_one(a, b);
    auto support = detail::closed_neighbourhood(x, {a, b});
    jobs.push_back([&, a, b, cs, support, i] {
      return detail::expect_none("lemma3 i=" + std::to_string(i), x, dm, 5, cs,
                                 [&, a, b](const Colouring& c) { return rung_conclusion(x, c, a, b); }, opt.budget, support);
    });
    jobs.push_back([&, a, b, cs, i] {
      return detail::expect_none("claim1 i=" + std::to_string(i), x, dm, 5, cs,
                                 [a, b](const Colouring& c) { return c[a] == 2 || c[b] == 2; }, opt.budget, {a, b});
    });
  }
  ClaimReport r{"lemma3", x.family_tag(), ClaimStatus::kTimeout, detail::run_checks(jobs, opt.threads)};
  r.status = detail::aggregate(r.checks);
  return r;
}

inline ClaimReport check_lemma_graphX(const ClaimOptions& opt = {}) { return check_lemma_graphX(graph_x(), opt); }

// G_i(r): columns 2i and 2i+1 of all three rows.
inline std::vector<Vertex> h_block(int r, int i) {
  std::vector<Vertex> out;
  for (int row = 0; row < 3; ++row)
    for (int d = 0; d < 2; ++d) out.push_back(h_vertex(r, row, 2 * (i % r) + d));
  return out;
}

// In a packing 5-colouring of H(r) no colour c in {4, 5} appears on two
// consecutive blocks G_i, G_{i+1}, and every block uses 4 or 5. Block indices are cyclic modulo r.
inline ClaimReport check_lemma6_hgraph(int r, const ClaimOptions& opt = {}) {
  if (r < 2) throw ClaimError("block claim needs r >= 2");
  Graph g = h_graph(r);
  auto dm = all_pairs_distances(g);
  ClaimReport rep{"lemma6", g.family_tag(), ClaimStatus::kTimeout, {}};
  auto exists = decide(g, dm, 5, {}, opt.budget);
  if (exists.status == Status::kUnsat) {
    rep.checks.push_back({"no packing 5-colouring", ClaimStatus::kVacuous, exists.nodes, exists.millis, std::nullopt});
    rep.status = ClaimStatus::kVacuous;
    return rep;
  }
  if (exists.status == Status::kTimeout) {
    rep.checks.push_back({"existence", ClaimStatus::kTimeout, exists.nodes, exists.millis, std::nullopt});
    rep.status = ClaimStatus::kTimeout;
    return rep;
  }
  std::vector<std::function<SubCheck()>> jobs;
  int blocks = opt.all_edges ? r : 1;
  for (int c = 4; c <= 5; ++c)
    for (int i = 0; i < blocks; ++i)
      jobs.push_back([&, c, i] {
        SubCheck s{"colour " + std::to_string(c) + " on G_" + std::to_string(i) + " and G_" + std::to_string((i + 1) % r),
                   ClaimStatus::kVerified, 0, 0, std::nullopt};
        for (Vertex a : h_block(r, i))
          for (Vertex b : h_block(r, i + 1)) {
            ConstraintSet cs;
            cs.fixed[a] = c;
            cs.fixed[b] = c;
            auto sub = detail::expect_unsat("", g, dm, 5, cs, opt.budget);
            s.nodes += sub.nodes;
            s.millis += sub.millis;
            if (sub.status != ClaimStatus::kVerified) {
              s.status = sub.status;
              s.witness = sub.witness;
              return s;
            }
          }
        return s;
      });
  jobs.push_back([&] {
    auto pred = [r](const Colouring& c) {
      for (int i = 0; i < r; ++i) {
        bool used = false;
        for (Vertex v : h_block(r, i)) used = used || c[v] == 4 || c[v] == 5;
        if (!used) return false;
      }
      return true;
    };
    return detail::expect_none("every G_i uses 4 or 5", g, dm, 5, {}, pred, opt.budget, {});
  });
  rep.checks = detail::run_checks(jobs, opt.threads);
  rep.status = detail::aggregate(rep.checks);
  return rep;
}

namespace detail {

// Shared opening of the H^l(r) checks: VACUOUS-STRONG when no packing 5-colouring exists.
inline std::optional<SubCheck> genh_vacuity(const Graph& g, const DistanceMatrix& dm, const ConstraintSet& cs,
                                            const Budget& b) {
  auto o = decide(g, dm, 5, cs, b);
  std::string what = cs.empty() ? "no packing 5-colouring" : "no packing 5-colouring with colour 1 on every edge";
  if (o.status == Status::kUnsat) return SubCheck{what, ClaimStatus::kVacuousStrong, o.nodes, o.millis, {}};
  if (o.status == Status::kTimeout) return SubCheck{"existence", ClaimStatus::kTimeout, o.nodes, o.millis, {}};
  return std::nullopt;
}

inline void require_genh(int l, int r) {
  if (l < 3 || r < 3) throw ClaimError("claim needs l >= 3 and r >= 3");
}

inline ClaimReport finish_genh(ClaimReport rep, std::optional<SubCheck> vac) {
  if (vac) {
    bool strong = vac->status == ClaimStatus::kVacuousStrong;
    rep.checks.insert(rep.checks.begin(), *vac);
    if (strong) {
      bool clean = std::none_of(rep.checks.begin(), rep.checks.end(),
                                [](auto& c) { return c.status == ClaimStatus::kCounterexample || c.status == ClaimStatus::kTimeout; });
      rep.status = clean ? ClaimStatus::kVacuousStrong : detail::aggregate(rep.checks);
      return rep;
    }
  }
  rep.status = detail::aggregate(rep.checks);
  return rep;
}

}  // namespace detail

// Colour 1 on an endpoint of the top-cycle edge u^0_2 u^0_3,
// or on every top and bottom cycle edge with all_edges.
inline ClaimReport check_appendixB(int l, int r, const ClaimOptions& opt = {}) {
  detail::require_genh(l, r);
  Graph g = gen_h_graph(l, r);
  auto dm = all_pairs_distances(g);
  auto vac = detail::genh_vacuity(g, dm, {}, opt.budget);
  std::vector<Edge> edges;
  if (opt.all_edges) {
    for (int level : {0, l + 1})
      for (int j = 0; j < 2 * r; ++j) edges.emplace_back(genh_vertex(r, level, j), genh_vertex(r, level, j + 1));
  } else {
    edges.emplace_back(genh_vertex(r, 0, 2), genh_vertex(r, 0, 3));
  }
  std::vector<std::function<SubCheck()>> jobs;
  for (auto [a, b] : edges)
    jobs.push_back([&, a, b] {
      return detail::expect_unsat("edge " + g.name(a) + " " + g.name(b), g, dm, 5, both_not_one(a, b), opt.budget);
    });
  ClaimReport rep{"appendixB", g.family_tag(), ClaimStatus::kTimeout, detail::run_checks(jobs, opt.threads)};
  return detail::finish_genh(std::move(rep), vac);
}

// Rung conclusion on the rungs u^i_2 u^i_3 of every interior level, or on every interior rung with all_edges.
// Levels are only symmetric under i <-> l+1-i, so one column pair covers all levels.
inline ClaimReport check_lemma7(int l, int r, const ClaimOptions& opt = {}) {
  detail::require_genh(l, r);
  Graph g = gen_h_graph(l, r);
  auto dm = all_pairs_distances(g);
  auto vac = detail::genh_vacuity(g, dm, {}, opt.budget);
  std::vector<Edge> rungs;
  if (opt.all_edges) {
    for (int i = 1; i <= l; ++i)
      for (int j = 0; j < r; ++j) rungs.emplace_back(genh_vertex(r, i, 2 * j), genh_vertex(r, i, 2 * j + 1));
  } else {
    for (int i = 1; i <= l; ++i) rungs.emplace_back(genh_vertex(r, i, 2), genh_vertex(r, i, 3));
  }
  std::vector<std::function<SubCheck()>> jobs;
  for (auto [a, b] : rungs)
    jobs.push_back([&, a, b] {
      return detail::expect_none("rung " + g.name(a) + " " + g.name(b), g, dm, 5, both_not_one(a, b),
                                 [&, a, b](const Colouring& c) { return rung_conclusion(g, c, a, b); }, opt.budget,
                                 detail::closed_neighbourhood(g, {a, b}));
    });
  ClaimReport rep{"lemma7", g.family_tag(), ClaimStatus::kTimeout, detail::run_checks(jobs, opt.threads)};
  return detail::finish_genh(std::move(rep), vac);
}

inline ConstraintSet require_one_everywhere(const Graph& g) {
  ConstraintSet cs;
  cs.edge_require_one = g.edges();
  return cs;
}

// With colour 1 on every edge, u^0_0 (or every level 0 and level l+1
// vertex with all_edges) can take neither 4 nor 5.
inline ClaimReport check_level0_no45(int l, int r, const ClaimOptions& opt = {}) {
  detail::require_genh(l, r);
  Graph g = gen_h_graph(l, r);
  auto dm = all_pairs_distances(g);
  auto base = require_one_everywhere(g);
  auto vac = detail::genh_vacuity(g, dm, base, opt.budget);
  std::vector<Vertex> targets;
  if (opt.all_edges) {
    for (int level : {0, l + 1})
      for (int j = 0; j < 2 * r; ++j) targets.push_back(genh_vertex(r, level, j));
  } else {
    targets.push_back(genh_vertex(r, 0, 0));
  }
  std::vector<std::function<SubCheck()>> jobs;
  for (Vertex v : targets)
    for (int c : {4, 5})
      jobs.push_back([&, v, c] {
        ConstraintSet cs = base;
        cs.fixed[v] = c;
        return detail::expect_unsat(g.name(v) + "=" + std::to_string(c), g, dm, 5, cs, opt.budget);
      });
  ClaimReport rep{"lemma11", g.family_tag(), ClaimStatus::kTimeout, detail::run_checks(jobs, opt.threads)};
  return detail::finish_genh(std::move(rep), vac);
}

// For every rung with no endpoint coloured 1, recolour its 2-endpoint (whose
// neighbours carry 3, 4, 5) with 1.
inline Colouring normalize_colour2_to_1(const Graph& g, const Colouring& c, const std::vector<Edge>& rungs) {
  auto dm = all_pairs_distances(g);
  if (c.size() != g.order() || !c.is_total() || c.max_colour() > 5 || !is_packing_colouring(dm, c).valid())
    throw ClaimError("input is not a valid packing 5-colouring");
  Colouring out = c;
  out.k = 5;
  for (auto [a, b] : rungs) {
    if (!g.adjacent(a, b)) throw ClaimError("rung " + g.name(a) + " " + g.name(b) + " is not an edge");
    if (out[a] == 1 || out[b] == 1) continue;
    bool done = false;
    for (Vertex x : {a, b})
      if (!done && rung_conclusion(g, out, x, x)) {
        out.colours[x] = 1;
        done = true;
      }
    if (!done) throw ClaimError("rung " + g.name(a) + " " + g.name(b) + " has no 2-endpoint with neighbours 3, 4, 5");
  }
  if (!is_packing_colouring(dm, out).valid()) throw std::logic_error("rewrite produced an invalid colouring");
  return out;
}

// Copies a packing 5-colouring of CL_n (n = 6, 7, 8) onto the 9 columns of X.
inline Colouring unfold_cl_to_x(int n, const Colouring& c) {
  if (n < 6 || n > 8) throw ClaimError("unfolding needs n in {6, 7, 8}");
  Graph cl = circular_ladder(n);
  if (c.size() != cl.order() || !c.is_total() || c.max_colour() > 5 || !is_packing_colouring(cl, c).valid())
    throw ClaimError("input is not a valid packing 5-colouring of CL_" + std::to_string(n));
  std::vector<int> out(18);
  for (int i = 0; i < 9; ++i) {
    int src = i < n ? i : i - n;
    out[x_u(i)] = c[cl_u(n, src)];
    out[x_v(i)] = c[cl_v(n, src)];
  }
  Colouring x(std::move(out), 5);
  if (!is_packing_colouring(graph_x(), x).valid()) throw std::logic_error("unfolded colouring is invalid");
  return x;
}

}  // namespace packcol

#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "packcol/common.hpp"
#include "packcol/graph.hpp"
#include "packcol/packings.hpp"

namespace packcol {

inline constexpr int kMaxColours = 30;

struct ConstraintError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConstraintSet {
  std::map<Vertex, int> fixed;
  std::map<Vertex, std::set<int>> forbidden;
  std::vector<Edge> edge_require_one;

  bool empty() const { return fixed.empty() && forbidden.empty() && edge_require_one.empty(); }

  void validate(const Graph& g, int k) const {
    auto check_vertex = [&](Vertex v) {
      if (v < 0 || v >= g.order()) throw ConstraintError("constraint on missing vertex " + std::to_string(v));
    };
    for (auto [v, c] : fixed) {
      check_vertex(v);
      if (c < 1 || c > k) throw ConstraintError("fixed colour " + std::to_string(c) + " outside 1.." + std::to_string(k));
      auto it = forbidden.find(v);
      if (it != forbidden.end() && it->second.count(c))
        throw ConstraintError("vertex " + std::to_string(v) + " has colour " + std::to_string(c) + " both fixed and forbidden");
    }
    for (const auto& [v, s] : forbidden) check_vertex(v);
    for (auto [u, v] : edge_require_one) {
      check_vertex(u);
      check_vertex(v);
      if (!g.adjacent(u, v))
        throw ConstraintError("edge_require_one pair " + std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
    }
  }

  bool satisfied_by(const Colouring& c) const {
    for (auto [v, col] : fixed)
      if (c[v] != col) return false;
    for (const auto& [v, s] : forbidden)
      if (s.count(c[v])) return false;
    for (auto [u, v] : edge_require_one)
      if (c[u] != 1 && c[v] != 1) return false;
    return true;
  }
};

enum class Status { kSat, kUnsat, kTimeout };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::kSat: return "SAT";
    case Status::kUnsat: return "UNSAT";
    case Status::kTimeout: return "TIMEOUT";
  }
  return "?";
}

struct SolveOutcome {
  Status status = Status::kTimeout;
  std::optional<Colouring> witness;
  std::uint64_t nodes = 0;
  double millis = 0;
  int threads = 1;
};

// kDynamic: smallest domain first, ties broken by the static rank.
// kStatic: decreasing eccentricity, then degree, then id.
// kNatural: vertex id order.
enum class VariableOrder { kDynamic, kStatic, kNatural };

struct SolverOptions {
  VariableOrder order = VariableOrder::kDynamic;
  int threads = 1;
};

namespace detail {

using Mask = std::uint32_t;

inline Mask bit(int c) { return Mask{1} << c; }

// Forward-checking search over colour domains with an undo trail.
class Engine {
 public:
  using Leaf = std::function<bool(const Colouring&)>;  // return true to stop

  Engine(const Graph& g, const DistanceMatrix& dm, int k, VariableOrder order)
      : n_(g.order()), k_(k), order_(order), near_(n_), cut_(n_), partners_(n_), rank_(n_) {
    if (k < 1 || k > kMaxColours) throw ConstraintError("colour budget must be in 1.." + std::to_string(kMaxColours));
    for (Vertex v = 0; v < n_; ++v) {
      std::vector<std::pair<int, Vertex>> close;
      for (Vertex w = 0; w < n_; ++w)
        if (w != v && dm(v, w) <= k) close.emplace_back(dm(v, w), w);
      std::sort(close.begin(), close.end());
      cut_[v].assign(k + 1, 0);
      for (auto [d, w] : close) near_[v].push_back(w);
      for (int c = 0; c <= k; ++c)
        cut_[v][c] = static_cast<int>(std::count_if(close.begin(), close.end(), [c](auto& p) { return p.first <= c; }));
    }
    std::vector<Vertex> ids(n_);
    for (Vertex v = 0; v < n_; ++v) ids[v] = v;
    if (order_ != VariableOrder::kNatural) {
      std::stable_sort(ids.begin(), ids.end(), [&](Vertex a, Vertex b) {
        int ea = dm.eccentricity(a), eb = dm.eccentricity(b);
        if (ea != eb) return ea > eb;
        return g.degree(a) > g.degree(b);
      });
    }
    static_order_ = ids;
    for (int i = 0; i < n_; ++i) rank_[ids[i]] = i;
    dom_.assign(n_, 0);
    col_.assign(n_, 0);
    in_support_.assign(n_, 0);
  }

  // Applies constraints at the root. Returns false if they are already contradictory.
  bool setup(const ConstraintSet& cs) {
    const Mask full = ((Mask{1} << (k_ + 1)) - 1) & ~Mask{1};
    std::fill(dom_.begin(), dom_.end(), full);
    std::fill(col_.begin(), col_.end(), 0);
    trail_.clear();
    assigned_ = 0;
    for (auto [u, v] : cs.edge_require_one) {
      partners_[u].push_back(v);
      partners_[v].push_back(u);
    }
    for (const auto& [v, s] : cs.forbidden)
      for (int c : s)
        if (c >= 1 && c <= k_) dom_[v] &= ~bit(c);
    for (Vertex v = 0; v < n_; ++v)
      if (!dom_[v]) return false;
    for (auto [v, c] : cs.fixed) {
      if (col_[v] || !(dom_[v] & bit(c))) return false;
      if (!assign(v, c)) return false;
    }
    trail_.clear();
    return true;
  }

  void set_support(const std::vector<Vertex>& support, std::function<bool(const Colouring&)> holds) {
    for (Vertex v : support) in_support_[v] = 1;
    support_left_ = 0;
    for (Vertex v = 0; v < n_; ++v)
      if (in_support_[v] && !col_[v]) ++support_left_;
    support_holds_ = std::move(holds);
  }

  // Depth-first search from the current state; calls leaf on every complete colouring reached.
  // Returns true if leaf asked to stop.
  bool dfs(BudgetMeter& meter, const Leaf& leaf) {
    if (support_holds_ && support_left_ == 0 && !support_checked_) {
      if (support_holds_(snapshot())) return false;
      support_checked_ = true;
      bool stop = dfs(meter, leaf);
      support_checked_ = false;
      return stop;
    }
    Vertex v = select();
    if (v < 0) return leaf(snapshot());
    for (Mask m = dom_[v]; m; m &= m - 1) {
      int c = std::countr_zero(m);
      if (!meter.tick()) return true;
      std::size_t mark = trail_.size();
      bool ok = assign(v, c);
      if (ok && dfs(meter, leaf)) {
        unassign(v, mark);
        return true;
      }
      unassign(v, mark);
    }
    return false;
  }

  Vertex select() const {
    if (order_ == VariableOrder::kDynamic) {
      Vertex best = -1;
      int best_size = 99, best_rank = 0;
      bool support_phase = support_holds_ && support_left_ > 0;
      for (Vertex v = 0; v < n_; ++v) {
        if (col_[v] || (support_phase && !in_support_[v])) continue;
        int s = std::popcount(dom_[v]);
        if (s < best_size || (s == best_size && rank_[v] < best_rank)) best = v, best_size = s, best_rank = rank_[v];
      }
      return best;
    }
    bool support_phase = support_holds_ && support_left_ > 0;
    for (Vertex v : static_order_)
      if (!col_[v] && (!support_phase || in_support_[v])) return v;
    return -1;
  }

  bool assign(Vertex v, int c) {
    col_[v] = c;
    ++assigned_;
    if (in_support_[v]) --support_left_;
    const Mask b = bit(c);
    const auto& nv = near_[v];
    for (int i = 0, e = cut_[v][c]; i < e; ++i) {
      Vertex w = nv[i];
      if (col_[w] == 0 && (dom_[w] & b)) {
        trail_.emplace_back(w, dom_[w]);
        dom_[w] &= ~b;
        if (!dom_[w]) return false;
      }
    }
    if (c != 1) {
      for (Vertex w : partners_[v]) {
        if (col_[w]) {
          if (col_[w] != 1) return false;
        } else if (dom_[w] & ~bit(1)) {
          trail_.emplace_back(w, dom_[w]);
          dom_[w] &= bit(1);
          if (!dom_[w]) return false;
        }
      }
    }
    return true;
  }

  void unassign(Vertex v, std::size_t mark) {
    while (trail_.size() > mark) {
      auto [w, d] = trail_.back();
      trail_.pop_back();
      dom_[w] = d;
    }
    col_[v] = 0;
    --assigned_;
    if (in_support_[v]) ++support_left_;
  }

  Mask domain(Vertex v) const { return dom_[v]; }
  Colouring snapshot() const { return Colouring(col_, k_); }

 private:
  int n_, k_;
  VariableOrder order_;
  std::vector<std::vector<Vertex>> near_;
  std::vector<std::vector<int>> cut_;
  std::vector<std::vector<Vertex>> partners_;
  std::vector<int> rank_;
  std::vector<Vertex> static_order_;
  std::vector<Mask> dom_;
  std::vector<int> col_;
  std::vector<std::pair<Vertex, Mask>> trail_;
  int assigned_ = 0;
  std::vector<char> in_support_;
  int support_left_ = 0;
  bool support_checked_ = false;
  std::function<bool(const Colouring&)> support_holds_;
};

inline SolveOutcome decide_parallel(const Engine& root, int threads, const Budget& b) {
  Vertex v = root.select();
  std::vector<int> values;
  for (Mask m = root.domain(v); m; m &= m - 1) values.push_back(std::countr_zero(m));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> timed_out{false};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mu;
  std::optional<Colouring> witness;
  Budget share = b;
  if (share.max_nodes) share.max_nodes = std::max<std::uint64_t>(1, *share.max_nodes / threads);
  Stopwatch watch;
  auto work = [&] {
    Engine e = root;
    BudgetMeter meter(share, &stop);
    while (!stop.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= values.size()) break;
      if (!meter.tick()) break;
      bool found = false;
      if (e.assign(v, values[i])) {
        found = e.dfs(meter, [&](const Colouring& c) {
          std::lock_guard<std::mutex> lock(mu);
          if (!witness) witness = c;
          stop = true;
          return true;
        });
      }
      e.unassign(v, 0);
      if (found || meter.exhausted()) break;
    }
    if (meter.exhausted()) timed_out = true;
    nodes += meter.nodes();
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  SolveOutcome out;
  out.nodes = nodes;
  out.millis = watch.millis();
  out.threads = threads;
  if (witness) {
    out.status = Status::kSat;
    out.witness = witness;
  } else {
    out.status = timed_out ? Status::kTimeout : Status::kUnsat;
  }
  return out;
}

}  // namespace detail

inline SolveOutcome decide(const Graph& g, const DistanceMatrix& dm, int k, const ConstraintSet& cs = {},
                           const Budget& b = {}, const SolverOptions& opt = {}) {
  if (k < 1) throw ConstraintError("colour budget must be at least 1");
  cs.validate(g, k);
  Stopwatch watch;
  detail::Engine e(g, dm, k, opt.order);
  SolveOutcome out;
  if (!e.setup(cs)) {
    out.status = Status::kUnsat;
    out.millis = watch.millis();
    return out;
  }
  if (opt.threads > 1 && e.select() >= 0) {
    out = detail::decide_parallel(e, opt.threads, b);
  } else {
    BudgetMeter meter(b);
    bool stopped = e.dfs(meter, [&](const Colouring& c) {
      out.witness = c;
      return true;
    });
    out.nodes = meter.nodes();
    out.status = out.witness ? Status::kSat : (stopped ? Status::kTimeout : Status::kUnsat);
  }
  out.millis = watch.millis();
  if (out.witness && (!is_packing_colouring(dm, *out.witness).valid() || !cs.satisfied_by(*out.witness)))
    throw std::logic_error("solver produced an invalid witness");
  return out;
}

inline SolveOutcome decide(const Graph& g, int k, const ConstraintSet& cs = {}, const Budget& b = {},
                           const SolverOptions& opt = {}) {
  return decide(g, all_pairs_distances(g), k, cs, b, opt);
}

struct ChiResult {
  Status status = Status::kTimeout;  // kSat once the value is exact
  int value = 0;
  int lower = 0;
  int upper = 0;
  Prop1Bound prop1;
  std::optional<Colouring> certificate;
  std::optional<SolveOutcome> below;  // decide at value-1
  std::vector<std::pair<int, SolveOutcome>> steps;
  std::uint64_t nodes = 0;
  double millis = 0;
};

// Starts at the counting bound and raises k until SAT.
inline ChiResult chi_rho(const Graph& g, const Budget& b = {}, const SolverOptions& opt = {}) {
  Stopwatch watch;
  auto dm = all_pairs_distances(g);
  ChiResult r;
  int start = 1;
  if (dm.diameter() != kInfinity) {
    r.prop1 = prop1_lower_bound(dm, b);
    if (r.prop1.proven) start = std::max(1, r.prop1.k);
  }
  r.lower = start;
  r.upper = std::max(1, g.order());
  auto run = [&](int k) {
    auto o = decide(g, dm, k, {}, b, opt);
    r.nodes += o.nodes;
    r.steps.emplace_back(k, o);
    return o;
  };
  bool exact_lower = true;
  const int top = std::min(kMaxColours, std::max(1, g.order()));
  for (int k = start; k <= top; ++k) {
    auto o = run(k);
    if (o.status == Status::kSat) {
      r.upper = k;
      r.certificate = o.witness;
      break;
    }
    if (o.status == Status::kUnsat && exact_lower)
      r.lower = k + 1;
    else
      exact_lower = false;
  }
  if (r.certificate && r.lower == r.upper) {
    r.status = Status::kSat;
    r.value = r.upper;
    if (r.value > 1) {
      auto it = std::find_if(r.steps.begin(), r.steps.end(), [&](auto& s) { return s.first == r.value - 1; });
      r.below = it != r.steps.end() ? it->second : run(r.value - 1);
      if (r.below->status == Status::kSat) throw std::logic_error("SAT below the counting bound");
    }
  }
  r.millis = watch.millis();
  return r;
}

// Independent oracle: plain enumeration in vertex-id order with incremental checks only.
inline Status brute_force_decide(const Graph& g, int k) {
  const int n = g.order();
  if (n > 14) throw ConstraintError("brute force limited to 14 vertices");
  if (k < 1) throw ConstraintError("colour budget must be at least 1");
  auto dm = all_pairs_distances(g);
  std::vector<int> col(n, 0);
  std::function<bool(int)> go = [&](int v) {
    if (v == n) return true;
    for (int c = 1; c <= k; ++c) {
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (col[u] == c && dm(u, v) <= c) ok = false;
      if (!ok) continue;
      col[v] = c;
      if (go(v + 1)) return true;
      col[v] = 0;
    }
    return false;
  };
  return go(0) ? Status::kSat : Status::kUnsat;
}

struct ViolationSearch {
  enum class Kind { kFound, kNone, kTimeout };
  Kind kind = Kind::kTimeout;
  std::optional<Colouring> witness;
  std::uint64_t nodes = 0;
  double millis = 0;
};

inline const char* to_string(ViolationSearch::Kind k) {
  switch (k) {
    case ViolationSearch::Kind::kFound: return "FOUND";
    case ViolationSearch::Kind::kNone: return "NONE";
    case ViolationSearch::Kind::kTimeout: return "TIMEOUT";
  }
  return "?";
}

using Predicate = std::function<bool(const Colouring&)>;

// Searches packing k-colourings satisfying cs for one where predicate is false.
// If support is given, predicate must depend only on those vertices: they are
// coloured first and any branch where it already holds is cut.
inline ViolationSearch find_colouring_violating(const Graph& g, const DistanceMatrix& dm, int k, const ConstraintSet& cs,
                                                const Predicate& predicate, const Budget& b = {},
                                                const std::vector<Vertex>& support = {}) {
  cs.validate(g, k);
  Stopwatch watch;
  ViolationSearch out;
  detail::Engine e(g, dm, k, VariableOrder::kDynamic);
  if (!e.setup(cs)) {
    out.kind = ViolationSearch::Kind::kNone;
    out.millis = watch.millis();
    return out;
  }
  if (!support.empty()) e.set_support(support, predicate);
  BudgetMeter meter(b);
  bool stopped = e.dfs(meter, [&](const Colouring& c) {
    if (predicate(c)) return false;
    out.witness = c;
    return true;
  });
  out.nodes = meter.nodes();
  out.millis = watch.millis();
  out.kind = out.witness ? ViolationSearch::Kind::kFound
                         : (stopped ? ViolationSearch::Kind::kTimeout : ViolationSearch::Kind::kNone);
  return out;
}

inline ViolationSearch find_colouring_violating(const Graph& g, int k, const ConstraintSet& cs, const Predicate& predicate,
                                                const Budget& b = {}, const std::vector<Vertex>& support = {}) {
  return find_colouring_violating(g, all_pairs_distances(g), k, cs, predicate, b, support);
}

}  // namespace packcol

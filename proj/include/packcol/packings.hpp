#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "packcol/common.hpp"
#include "packcol/graph.hpp"

namespace packcol {

struct PackingResult {
  int size = 0;
  std::vector<Vertex> witness;
  bool proven = false;  // false when the budget ran out first
  std::uint64_t nodes = 0;
  double millis = 0;
};

namespace detail {

class MisSearch {
 public:
  MisSearch(const DistanceMatrix& dm, int radius, const Budget& b) : n_(dm.order()), meter_(b) {
    adj_.assign(n_, Bitset(n_));
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = 0; v < n_; ++v)
        if (u != v && dm(u, v) <= radius) adj_[u].set(v);
  }

  PackingResult run() {
    Bitset all(n_);
    for (Vertex v = 0; v < n_; ++v) all.set(v);
    greedy(all);
    std::vector<Vertex> cur;
    search(all, cur);
    PackingResult r;
    r.size = static_cast<int>(best_.size());
    r.witness = best_;
    std::sort(r.witness.begin(), r.witness.end());
    r.proven = !meter_.exhausted();
    r.nodes = meter_.nodes();
    r.millis = meter_.millis();
    return r;
  }

 private:
  void greedy(Bitset p) {
    std::vector<Vertex> s;
    while (!p.none()) {
      Vertex pick = -1;
      int low = n_ + 1;
      for (Vertex v = p.first(); v >= 0; v = p.next(v)) {
        int d = adj_[v].count_and(p);
        if (d < low) low = d, pick = v;
      }
      s.push_back(pick);
      p.reset(pick);
      p.and_not(adj_[pick]);
    }
    best_ = s;
  }

  // Greedy clique cover of p: its size bounds any independent set inside p.
  int cover(Bitset q) const {
    int cliques = 0;
    while (!q.none()) {
      Vertex v = q.first();
      q.reset(v);
      Bitset c = adj_[v];
      c &= q;
      while (!c.none()) {
        Vertex w = c.first();
        q.reset(w);
        c &= adj_[w];
      }
      ++cliques;
    }
    return cliques;
  }

  void search(Bitset p, std::vector<Vertex>& cur) {
    while (true) {
      if (!meter_.tick()) return;
      if (p.none()) {
        if (cur.size() > best_.size()) best_ = cur;
        return;
      }
      if (static_cast<int>(cur.size()) + cover(p) <= static_cast<int>(best_.size())) return;
      Vertex v = -1;
      int high = -1;
      for (Vertex x = p.first(); x >= 0; x = p.next(x)) {
        int d = adj_[x].count_and(p);
        if (d > high) high = d, v = x;
      }
      if (high == 0) {
        auto before = cur.size();
        for (Vertex x = p.first(); x >= 0; x = p.next(x)) cur.push_back(x);
        if (cur.size() > best_.size()) best_ = cur;
        cur.resize(before);
        return;
      }
      Bitset with = p;
      with.reset(v);
      with.and_not(adj_[v]);
      cur.push_back(v);
      search(with, cur);
      cur.pop_back();
      p.reset(v);
    }
  }

  int n_;
  std::vector<Bitset> adj_;
  std::vector<Vertex> best_;
  BudgetMeter meter_;
};

}  // namespace detail

// rho_i: maximum independent set of the i-th power graph.
inline PackingResult max_i_packing(const DistanceMatrix& dm, int i, const Budget& b = {}) {
  if (i < 1) throw GraphError("packing index must be at least 1");
  if (dm.order() == 0) return {0, {}, true, 0, 0};
  return detail::MisSearch(dm, i, b).run();
}

inline PackingResult max_i_packing(const Graph& g, int i, const Budget& b = {}) {
  return max_i_packing(all_pairs_distances(g), i, b);
}

struct RhoTable {
  std::string graph;
  int k = 0;
  std::vector<int> rho;  // rho[i-1] = rho_i
  std::vector<std::vector<Vertex>> witnesses;
  bool proven = true;
};

inline RhoTable rho_table(const Graph& g, int k, const Budget& b = {}) {
  if (k < 1) throw GraphError("rho table needs k >= 1");
  auto dm = all_pairs_distances(g);
  RhoTable t;
  t.graph = g.family_tag();
  t.k = k;
  for (int i = 1; i <= k; ++i) {
    auto r = max_i_packing(dm, i, b);
    t.rho.push_back(r.size);
    t.witnesses.push_back(r.witness);
    t.proven = t.proven && r.proven;
  }
  return t;
}

struct Prop1Bound {
  int k = 0;
  bool proven = false;
  std::vector<int> rho;
};

// Smallest k with rho_1 + ... + rho_k >= |V|.
inline Prop1Bound prop1_lower_bound(const DistanceMatrix& dm, const Budget& b = {}) {
  const int n = dm.order();
  const int diam = dm.diameter();
  if (diam == kInfinity) throw GraphError("counting bound needs a connected graph");
  Prop1Bound out;
  out.proven = true;
  int sum = 0;
  for (int i = 1; sum < n; ++i) {
    int rho = 1;
    if (i < diam) {
      auto r = max_i_packing(dm, i, b);
      if (!r.proven) {
        out.proven = false;
        out.k = 0;
        return out;
      }
      rho = r.size;
    }
    out.rho.push_back(rho);
    sum += rho;
    out.k = i;
  }
  return out;
}

inline Prop1Bound prop1_lower_bound(const Graph& g, const Budget& b = {}) {
  return prop1_lower_bound(all_pairs_distances(g), b);
}

}  // namespace packcol

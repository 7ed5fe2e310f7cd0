#pragma once

#include <random>
#include <string>
#include <vector>

#include "packcol/families.hpp"
#include "packcol/graph.hpp"

namespace packcol::testing {

inline Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return build_graph(10, e);
}

inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return build_graph(leaves + 1, e);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  for (auto [u, v] : b.edges()) e.emplace_back(u + a.order(), v + a.order());
  return build_graph(a.order() + b.order(), e);
}

// Fixed-seed G(n, p) graph; the seed keeps the corpus identical across runs.
inline Graph random_graph(int n, double p, unsigned seed) {
  std::mt19937 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return build_graph(n, e);
}

struct Named {
  std::string name;
  Graph graph;
};

// Small graphs (at most 12 vertices) for oracle comparisons.
inline std::vector<Named> small_corpus() {
  std::vector<Named> c;
  for (int n = 1; n <= 8; ++n) c.push_back({"P" + std::to_string(n), path(n)});
  for (int n = 3; n <= 12; ++n) c.push_back({"C" + std::to_string(n), cycle(n)});
  for (int n = 1; n <= 5; ++n) c.push_back({"K" + std::to_string(n), complete(n)});
  for (int n = 3; n <= 6; ++n) c.push_back({"CL" + std::to_string(n), circular_ladder(n)});
  for (int n = 3; n <= 6; ++n) c.push_back({"corona C" + std::to_string(n), corona(cycle(n))});
  c.push_back({"H2", h_graph(2)});
  c.push_back({"petersen", petersen()});
  c.push_back({"K2xP3", cartesian_product(path(3), path(2))});
  c.push_back({"star5", star(5)});
  c.push_back({"C3+C4", disjoint_union(cycle(3), cycle(4))});
  c.push_back({"P2+K1", disjoint_union(path(2), path(1))});
  for (unsigned s = 0; s < 6; ++s) c.push_back({"random" + std::to_string(s), random_graph(7 + s % 5, 0.35, 1000 + s)});
  return c;
}

inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
  const int n = g.order(), inf = 1 << 28;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) d[v][v] = 0;
  for (auto [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
  return d;
}

// Subsets as bitmasks; usable up to about 20 vertices.
inline bool is_i_packing(const std::vector<std::vector<int>>& d, unsigned mask, int i) {
  const int n = static_cast<int>(d.size());
  for (int u = 0; u < n; ++u)
    if (mask >> u & 1)
      for (int v = u + 1; v < n; ++v)
        if ((mask >> v & 1) && d[u][v] <= i) return false;
  return true;
}

inline int naive_max_packing(const Graph& g, int i) {
  auto d = floyd_warshall(g);
  int best = 0;
  for (unsigned mask = 0; mask < (1u << g.order()); ++mask)
    if (is_i_packing(d, mask, i)) best = std::max(best, __builtin_popcount(mask));
  return best;
}

}  // namespace packcol::testing

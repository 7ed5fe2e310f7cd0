#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "packcol/graph.hpp"

namespace packcol {

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw GraphError(what);
}

inline Graph finish(int n, const std::vector<Edge>& e, std::vector<Label> labels, std::string tag) {
  Graph g = build_graph(n, e);
  g.set_labels(std::move(labels));
  g.set_family_tag(std::move(tag));
  return g;
}

}  // namespace detail

inline Graph path(int n) {
  detail::require(n >= 1, "path needs n >= 1");
  std::vector<Edge> e;
  std::vector<Label> l;
  for (int i = 0; i < n; ++i) {
    l.push_back({"u", -1, i});
    if (i + 1 < n) e.emplace_back(i, i + 1);
  }
  return detail::finish(n, e, l, "P n=" + std::to_string(n));
}

inline Graph cycle(int n) {
  detail::require(n >= 3, "cycle needs n >= 3");
  std::vector<Edge> e;
  std::vector<Label> l;
  for (int i = 0; i < n; ++i) {
    l.push_back({"u", -1, i});
    e.emplace_back(i, (i + 1) % n);
  }
  return detail::finish(n, e, l, "C n=" + std::to_string(n));
}

inline Graph complete(int n) {
  detail::require(n >= 1, "complete graph needs n >= 1");
  std::vector<Edge> e;
  std::vector<Label> l;
  for (int i = 0; i < n; ++i) {
    l.push_back({"u", -1, i});
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return detail::finish(n, e, l, "K n=" + std::to_string(n));
}

// Vertex (x, y) gets id y*|V(g)| + x, so C_n x K_2 numbers like CL_n.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  const int a = g.order(), b = h.order();
  auto id = [a](int x, int y) { return y * a + x; };
  std::vector<Edge> e;
  std::vector<Label> l;
  for (int y = 0; y < b; ++y)
    for (int x = 0; x < a; ++x) l.push_back({"x", y, x});
  for (int y = 0; y < b; ++y)
    for (auto [u, v] : g.edges()) e.emplace_back(id(u, y), id(v, y));
  for (auto [u, v] : h.edges())
    for (int x = 0; x < a; ++x) e.emplace_back(id(x, u), id(x, v));
  return detail::finish(a * b, e, l, "");
}

inline Vertex cl_u(int n, int i) { return ((i % n) + n) % n; }
inline Vertex cl_v(int n, int i) { return n + cl_u(n, i); }

inline Graph circular_ladder(int n) {
  detail::require(n >= 3, "circular ladder needs n >= 3");
  std::vector<Edge> e;
  std::vector<Label> l;
  for (int i = 0; i < n; ++i) l.push_back({"u", -1, i});
  for (int i = 0; i < n; ++i) l.push_back({"v", -1, i});
  for (int i = 0; i < n; ++i) {
    e.emplace_back(cl_u(n, i), cl_u(n, i + 1));
    e.emplace_back(cl_v(n, i), cl_v(n, i + 1));
    e.emplace_back(cl_u(n, i), cl_v(n, i));
  }
  return detail::finish(2 * n, e, l, "CL n=" + std::to_string(n));
}

// Pendant of original vertex i is vertex |V(g)| + i, labelled w_i.
inline Graph corona(const Graph& g) {
  const int n = g.order();
  std::vector<Edge> e = g.edges();
  std::vector<Label> l;
  for (int i = 0; i < n; ++i) l.push_back(g.has_labels() ? g.label(i) : Label{"u", -1, i});
  for (int i = 0; i < n; ++i) {
    l.push_back({"w", -1, i});
    e.emplace_back(i, n + i);
  }
  std::string tag = g.family_tag().empty() ? "" : "CORONA " + g.family_tag();
  return detail::finish(2 * n, e, l, tag);
}

// row 0 = u, 1 = v, 2 = w
inline Vertex h_vertex(int r, int row, int col) { return row * 2 * r + (((col % (2 * r)) + 2 * r) % (2 * r)); }

inline Graph h_graph(int r) {
  detail::require(r >= 2, "H-graph needs r >= 2");
  const int m = 2 * r;
  std::vector<Edge> e;
  std::vector<Label> l;
  const char* roles[] = {"u", "v", "w"};
  for (int row = 0; row < 3; ++row)
    for (int j = 0; j < m; ++j) l.push_back({roles[row], -1, j});
  for (int j = 0; j < m; ++j) {
    e.emplace_back(h_vertex(r, 0, j), h_vertex(r, 0, j + 1));
    e.emplace_back(h_vertex(r, 2, j), h_vertex(r, 2, j + 1));
    e.emplace_back(h_vertex(r, 0, j), h_vertex(r, 1, j));
    e.emplace_back(h_vertex(r, 1, j), h_vertex(r, 2, j));
  }
  for (int i = 0; i < r; ++i) e.emplace_back(h_vertex(r, 1, 2 * i), h_vertex(r, 1, 2 * i + 1));
  return detail::finish(6 * r, e, l, "H r=" + std::to_string(r));
}

inline Vertex genh_vertex(int r, int level, int col) { return level * 2 * r + (((col % (2 * r)) + 2 * r) % (2 * r)); }

inline Graph gen_h_graph(int levels, int r) {
  detail::require(levels >= 1, "generalised H-graph needs l >= 1");
  detail::require(r >= 2, "generalised H-graph needs r >= 2");
  const int m = 2 * r, top = levels + 1;
  std::vector<Edge> e;
  std::vector<Label> l;
  for (int i = 0; i <= top; ++i)
    for (int j = 0; j < m; ++j) l.push_back({"u", i, j});
  for (int j = 0; j < m; ++j) {
    e.emplace_back(genh_vertex(r, 0, j), genh_vertex(r, 0, j + 1));
    e.emplace_back(genh_vertex(r, top, j), genh_vertex(r, top, j + 1));
    for (int i = 0; i < top; ++i) e.emplace_back(genh_vertex(r, i, j), genh_vertex(r, i + 1, j));
  }
  for (int i = 1; i < top; ++i)
    for (int j = 0; j < r; ++j) e.emplace_back(genh_vertex(r, i, 2 * j), genh_vertex(r, i, 2 * j + 1));
  return detail::finish(m * (levels + 2), e, l, "GENH l=" + std::to_string(levels) + " r=" + std::to_string(r));
}

// u_0..u_8 then v_0..v_8.
inline Vertex x_u(int i) { return i; }
inline Vertex x_v(int i) { return 9 + i; }

inline Graph graph_x() {
  std::vector<Edge> e;
  std::vector<Label> l;
  for (int i = 0; i < 9; ++i) l.push_back({"u", -1, i});
  for (int i = 0; i < 9; ++i) l.push_back({"v", -1, i});
  for (int i = 0; i < 8; ++i) {
    e.emplace_back(x_u(i), x_u(i + 1));
    e.emplace_back(x_v(i), x_v(i + 1));
  }
  for (int i = 2; i <= 6; ++i) e.emplace_back(x_u(i), x_v(i));
  return detail::finish(18, e, l, "X");
}

// All levels of H^l(r) restricted to columns first..last, no wraparound.
inline Graph window(int levels, int r, int first, int last) {
  detail::require(first >= 0 && first <= last && last < 2 * r, "window columns must satisfy 0 <= first <= last < 2r");
  Graph g = gen_h_graph(levels, r);
  std::vector<Vertex> keep;
  for (int i = 0; i <= levels + 1; ++i)
    for (int j = first; j <= last; ++j) keep.push_back(genh_vertex(r, i, j));
  Graph w = induced_subgraph(g, keep).graph;
  w.set_family_tag("WINDOW l=" + std::to_string(levels) + " r=" + std::to_string(r) + " cols=" + std::to_string(first) +
                   ".." + std::to_string(last));
  return w;
}

// True when map (vertex of h -> vertex of g) is injective and sends every edge of h to an edge of g.
inline bool embeds(const Graph& h, const Graph& g, const std::vector<Vertex>& map) {
  if (static_cast<int>(map.size()) != h.order()) return false;
  std::vector<char> used(g.order(), 0);
  for (Vertex x : map) {
    if (x < 0 || x >= g.order() || used[x]) return false;
    used[x] = 1;
  }
  for (auto [u, v] : h.edges())
    if (!g.adjacent(map[u], map[v])) return false;
  return true;
}

// Isomorphism check through an explicit label translation from a to b.
inline bool isomorphic_by_labels(const Graph& a, const Graph& b, const std::function<Label(const Label&)>& translate) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<Vertex> map(a.order());
  for (Vertex v = 0; v < a.order(); ++v) {
    auto w = b.find(translate(a.label(v)));
    if (!w) return false;
    map[v] = *w;
  }
  return embeds(a, b, map);
}

// Named family request, as used by the command line and pattern registry.
struct FamilyRequest {
  std::string family;  // P, C, K, CL, CORONA, H, GENH, X, WINDOW
  std::map<std::string, int> params;
};

inline int param(const FamilyRequest& f, const std::string& name) {
  auto it = f.params.find(name);
  if (it == f.params.end()) throw GraphError("family " + f.family + " needs parameter " + name);
  return it->second;
}

inline Graph make_family(const FamilyRequest& f) {
  const auto& s = f.family;
  if (s == "P") return path(param(f, "n"));
  if (s == "C") return cycle(param(f, "n"));
  if (s == "K") return complete(param(f, "n"));
  if (s == "CL") return circular_ladder(param(f, "n"));
  if (s == "CORONA") return corona(cycle(param(f, "n")));
  if (s == "H") return h_graph(param(f, "r"));
  if (s == "GENH") return gen_h_graph(param(f, "l"), param(f, "r"));
  if (s == "X") return graph_x();
  if (s == "WINDOW") return window(param(f, "l"), param(f, "r"), param(f, "first"), param(f, "last"));
  throw GraphError("unknown family " + s);
}

}  // namespace packcol

#pragma once

#include <algorithm>
#include <compare>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "packcol/common.hpp"

namespace packcol {

using Edge = std::pair<Vertex, Vertex>;

// Structured vertex name in family notation, e.g. u^2_5 is {"u", 2, 5}.
// level is -1 for families without levels.
struct Label {
  std::string role;
  int level = -1;
  int column = -1;

  auto operator<=>(const Label&) const = default;

  std::string str() const {
    std::string s = role;
    if (level >= 0) s += "^" + std::to_string(level);
    if (column >= 0) s += "_" + std::to_string(column);
    return s;
  }
};

class Graph {
 public:
  Graph() = default;

  int order() const { return static_cast<int>(adj_.size()); }
  std::size_t size() const { return m_; }
  const std::vector<Vertex>& neighbours(Vertex v) const { return adj_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }
  bool adjacent(Vertex u, Vertex v) const { return std::binary_search(adj_.at(u).begin(), adj_.at(u).end(), v); }

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(Vertex v) const { return labels_.at(v); }
  void set_labels(std::vector<Label> labels) {
    if (!labels.empty() && static_cast<int>(labels.size()) != order())
      throw GraphError("label count does not match vertex count");
    labels_ = std::move(labels);
  }
  std::optional<Vertex> find(const Label& l) const {
    for (Vertex v = 0; v < static_cast<Vertex>(labels_.size()); ++v)
      if (labels_[v] == l) return v;
    return std::nullopt;
  }
  Vertex at(const Label& l) const {
    auto v = find(l);
    if (!v) throw GraphError("no vertex labelled " + l.str());
    return *v;
  }
  std::string name(Vertex v) const { return has_labels() ? labels_[v].str() : std::to_string(v); }

  const std::string& family_tag() const { return tag_; }
  void set_family_tag(std::string tag) { tag_ = std::move(tag); }

  bool same_adjacency(const Graph& o) const { return adj_ == o.adj_; }

  friend Graph build_graph(int n, std::span<const Edge> edges);

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Label> labels_;
  std::string tag_;
  std::size_t m_ = 0;
};

inline Graph build_graph(int n, std::span<const Edge> edges) {
  if (n < 0) throw GraphError("negative vertex count");
  Graph g;
  g.adj_.assign(n, {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
    if (u == v) throw GraphError("self-loop at " + std::to_string(u));
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (Vertex v = 0; v < n; ++v) {
    auto& a = g.adj_[v];
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end())
      throw GraphError("duplicate edge at " + std::to_string(v));
  }
  g.m_ = edges.size();
  return g;
}

inline Graph build_graph(int n, const std::vector<Edge>& edges) {
  return build_graph(n, std::span<const Edge>(edges));
}

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kInfinity) {}

  int order() const { return n_; }
  int operator()(Vertex u, Vertex v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  int& at(Vertex u, Vertex v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  std::span<const int> row(Vertex u) const { return {d_.data() + static_cast<std::size_t>(u) * n_, static_cast<std::size_t>(n_)}; }

  int eccentricity(Vertex u) const {
    int e = 0;
    for (int x : row(u)) e = std::max(e, x);
    return e;
  }
  int diameter() const {
    int e = 0;
    for (Vertex u = 0; u < n_; ++u) e = std::max(e, eccentricity(u));
    return e;
  }

 private:
  int n_ = 0;
  std::vector<int> d_;
};

inline DistanceMatrix all_pairs_distances(const Graph& g) {
  const int n = g.order();
  DistanceMatrix dm(n);
  std::vector<Vertex> queue(n);
  for (Vertex s = 0; s < n; ++s) {
    int head = 0, tail = 0;
    dm.at(s, s) = 0;
    queue[tail++] = s;
    while (head < tail) {
      Vertex x = queue[head++];
      int dx = dm(s, x);
      for (Vertex y : g.neighbours(x))
        if (dm(s, y) == kInfinity) {
          dm.at(s, y) = dx + 1;
          queue[tail++] = y;
        }
    }
  }
  return dm;
}

inline int diameter(const Graph& g) { return all_pairs_distances(g).diameter(); }

inline bool is_connected(const Graph& g) { return g.order() <= 1 || diameter(g) != kInfinity; }

inline Graph power_graph(const Graph& g, int i) {
  if (i < 1) throw GraphError("power radius must be at least 1");
  auto dm = all_pairs_distances(g);
  std::vector<Edge> e;
  for (Vertex u = 0; u < g.order(); ++u)
    for (Vertex v = u + 1; v < g.order(); ++v)
      if (dm(u, v) <= i) e.emplace_back(u, v);
  Graph p = build_graph(g.order(), e);
  p.set_labels(g.labels());
  return p;
}

struct Subgraph {
  Graph graph;
  std::vector<Vertex> old_to_new;  // -1 for dropped vertices
  std::vector<Vertex> new_to_old;
};

inline Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  if (keep.empty()) throw GraphError("induced subgraph of an empty vertex set");
  Subgraph s;
  s.old_to_new.assign(g.order(), -1);
  std::vector<Vertex> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (Vertex v : sorted) {
    if (v < 0 || v >= g.order()) throw GraphError("vertex " + std::to_string(v) + " not in graph");
    s.old_to_new[v] = static_cast<Vertex>(s.new_to_old.size());
    s.new_to_old.push_back(v);
  }
  std::vector<Edge> e;
  for (auto [u, v] : g.edges())
    if (s.old_to_new[u] >= 0 && s.old_to_new[v] >= 0) e.emplace_back(s.old_to_new[u], s.old_to_new[v]);
  s.graph = build_graph(static_cast<int>(sorted.size()), e);
  if (g.has_labels()) {
    std::vector<Label> l;
    for (Vertex v : s.new_to_old) l.push_back(g.label(v));
    s.graph.set_labels(std::move(l));
  }
  return s;
}

inline Subgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
  return induced_subgraph(g, std::span<const Vertex>(keep));
}

// Colour 0 means unassigned.
struct Colouring {
  std::vector<int> colours;
  int k = 0;

  Colouring() = default;
  Colouring(std::vector<int> c, int budget) : colours(std::move(c)), k(budget) {}

  int size() const { return static_cast<int>(colours.size()); }
  int operator[](Vertex v) const { return colours[v]; }
  int max_colour() const { return colours.empty() ? 0 : *std::max_element(colours.begin(), colours.end()); }
  bool is_total() const { return std::find(colours.begin(), colours.end(), 0) == colours.end(); }
  std::vector<Vertex> colour_class(int c) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
      if (colours[v] == c) out.push_back(v);
    return out;
  }
};

struct Violation {
  Vertex u = -1;
  Vertex v = -1;
  int colour = 0;
  bool operator==(const Violation&) const = default;
};

struct ValidityReport {
  std::optional<Violation> violation;
  bool valid() const { return !violation.has_value(); }
};

// Reports the lexicographically lowest (u, v) pair violating the packing condition.
inline ValidityReport is_packing_colouring(const DistanceMatrix& dm, const Colouring& c) {
  if (c.size() != dm.order()) throw GraphError("colouring length does not match graph order");
  for (Vertex u = 0; u < c.size(); ++u) {
    int cu = c[u];
    if (cu < 0 || cu > c.k) throw GraphError("colour " + std::to_string(cu) + " outside 0.." + std::to_string(c.k));
  }
  for (Vertex u = 0; u < c.size(); ++u) {
    int cu = c[u];
    if (cu == 0) continue;
    for (Vertex v = u + 1; v < c.size(); ++v)
      if (c[v] == cu && dm(u, v) <= cu) return {Violation{u, v, cu}};
  }
  return {};
}

inline ValidityReport is_packing_colouring(const Graph& g, const Colouring& c) {
  return is_packing_colouring(all_pairs_distances(g), c);
}

}  // namespace packcol

#pragma once

#include <cstdint>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "packcol/graph.hpp"

namespace packcol {

// Text format: "c ..." comments, "p <n> <m>", then m lines "e <u> <v>".
// A "c family <tag>" comment carries the family tag through a round trip.
inline void write_graph_text(std::ostream& os, const Graph& g) {
  if (!g.family_tag().empty()) os << "c family " << g.family_tag() << '\n';
  os << "p " << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) os << "e " << u << ' ' << v << '\n';
}

inline std::string graph_text(const Graph& g) {
  std::ostringstream os;
  write_graph_text(os, g);
  return os.str();
}

inline Graph read_graph_text(std::istream& is) {
  std::string line, tag;
  int n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw FormatError("line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "c") {
      std::string word;
      if (ls >> word && word == "family") {
        std::getline(ls >> std::ws, tag);
      }
      continue;
    }
    if (kind == "p") {
      if (n >= 0) fail("duplicate header");
      if (!(ls >> n >> m) || n < 0 || m < 0) fail("malformed header");
    } else if (kind == "e") {
      if (n < 0) fail("edge before header");
      Vertex u, v;
      if (!(ls >> u >> v)) fail("malformed edge");
      if (u < 0 || v < 0 || u >= n || v >= n) fail("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
      if (u == v) fail("self-loop at " + std::to_string(u));
      edges.emplace_back(u, v);
    } else {
      fail("unknown line type '" + kind + "'");
    }
    std::string rest;
    if (ls >> rest) fail("trailing text");
  }
  if (n < 0) throw FormatError("missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw FormatError("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  Graph g;
  try {
    g = build_graph(n, edges);
  } catch (const GraphError& e) {
    throw FormatError(e.what());
  }
  g.set_family_tag(tag);
  return g;
}

inline Graph parse_graph_text(const std::string& s) {
  std::istringstream is(s);
  return read_graph_text(is);
}

// FNV-1a over the canonical edge list, independent of comments and labels.
inline std::string content_hash(const Graph& g) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  feed("p " + std::to_string(g.order()) + ' ' + std::to_string(g.size()) + '\n');
  for (auto [u, v] : g.edges()) feed("e " + std::to_string(u) + ' ' + std::to_string(v) + '\n');
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace packcol

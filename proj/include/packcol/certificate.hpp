#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "packcol/families.hpp"
#include "packcol/graph_io.hpp"
#include "packcol/solver.hpp"

namespace packcol {

inline constexpr const char* kCertificateSchema = "packcol-certificate/1";

// Where a graph came from: a named family or a graph text file.
struct GraphSource {
  std::optional<FamilyRequest> family;
  std::string file;
};

inline nlohmann::json graph_json(const GraphSource& src, const Graph& g) {
  nlohmann::json j;
  if (src.family) {
    j["family"] = src.family->family;
    j["params"] = src.family->params;
  } else {
    j["file"] = src.file;
  }
  j["order"] = g.order();
  j["size"] = g.size();
  j["hash"] = content_hash(g);
  return j;
}

inline nlohmann::json constraints_json(const Graph& g, const ConstraintSet& cs) {
  nlohmann::json j = nlohmann::json::object();
  if (!cs.fixed.empty()) {
    auto& f = j["fixed"];
    for (auto [v, c] : cs.fixed) f[g.name(v)] = c;
  }
  if (!cs.forbidden.empty()) {
    auto& f = j["forbidden"];
    for (const auto& [v, s] : cs.forbidden) f[g.name(v)] = s;
  }
  if (!cs.edge_require_one.empty()) j["edge_require_one"] = cs.edge_require_one.size();
  return j;
}

// Builds a certificate; a SAT witness is revalidated first and "check" records the result.
inline nlohmann::json make_certificate(const GraphSource& src, const Graph& g, int k, const ConstraintSet& cs,
                                       const SolveOutcome& o) {
  nlohmann::json j;
  j["schema"] = kCertificateSchema;
  j["tool_version"] = kToolVersion;
  j["graph"] = graph_json(src, g);
  j["k"] = k;
  j["status"] = to_string(o.status);
  j["constraints"] = constraints_json(g, cs);
  j["stats"] = {{"nodes", o.nodes}, {"millis", o.millis}, {"threads", o.threads}};
  j["check"] = false;
  if (o.witness) {
    bool ok = is_packing_colouring(g, *o.witness).valid() && cs.satisfied_by(*o.witness) && o.witness->is_total();
    if (!ok) throw std::logic_error("refusing to certify an invalid colouring");
    j["colouring"] = o.witness->colours;
    j["check"] = true;
  }
  return j;
}

struct CertificateCheck {
  bool valid = false;
  std::string reason;
};

// Independent pass: rebuilds the graph, matches the content hash and revalidates the colouring.
inline CertificateCheck verify_certificate(const nlohmann::json& cert, const Graph& g) {
  auto fail = [](std::string why) { return CertificateCheck{false, std::move(why)}; };
  if (!cert.is_object() || cert.value("schema", "") != kCertificateSchema) return fail("unknown certificate schema");
  if (!cert.contains("graph") || cert["graph"].value("hash", "") != content_hash(g)) return fail("graph hash mismatch");
  if (cert.value("status", "") != "SAT") return fail("only SAT certificates carry a checkable colouring");
  if (!cert.contains("colouring") || !cert["colouring"].is_array()) return fail("missing colouring");
  int k = cert.value("k", 0);
  std::vector<int> cols;
  for (const auto& x : cert["colouring"]) {
    if (!x.is_number_integer()) return fail("non-integer colour");
    cols.push_back(x.get<int>());
  }
  if (static_cast<int>(cols.size()) != g.order()) return fail("colouring length differs from graph order");
  for (int c : cols)
    if (c < 1 || c > k) return fail("colour " + std::to_string(c) + " outside 1.." + std::to_string(k));
  auto rep = is_packing_colouring(g, Colouring(cols, k));
  if (!rep.valid()) {
    const auto& v = *rep.violation;
    return fail("vertices " + g.name(v.u) + " and " + g.name(v.v) + " share colour " + std::to_string(v.colour));
  }
  return {true, "VALID"};
}

}  // namespace packcol

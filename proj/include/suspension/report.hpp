#pragma once

// JSON renderings of verdicts and constructions. Exact values are strings.

#include <json.hpp>

#include "decider.hpp"
#include "simulator.hpp"

namespace suspension {

using Json = nlohmann::ordered_json;

inline Json to_json(const QVector& v) { return to_string(v); }

inline Json to_json(const MixingVerdict& v, const Alphabet& alphabet) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["delta"] = v.delta ? Json(to_string(*v.delta)) : Json(nullptr);
  j["bound"] = v.bound;
  j["reason"] = v.reason;
  Json gens = Json::array();
  for (const auto& g : v.generators)
    gens.push_back(to_string(g));
  j["generators"] = gens;
  Json wit = Json::array();
  for (const auto& w : v.witnesses)
    wit.push_back(to_string(w, alphabet));
  j["witnesses"] = wit;
  j["warnings"] = v.warnings;
  return j;
}

inline Json to_json(const WindowFunction& f, const Alphabet& alphabet) {
  Json j;
  j["start"] = f.start();
  j["length"] = f.length();
  Json table = Json::object();
  for (const auto& [w, v] : f.table())
    table[to_string(w, alphabet)] = to_string(v);
  j["table"] = table;
  return j;
}

inline Json to_json(const CohomologyResult& c, const Alphabet& alphabet) {
  Json j;
  j["cohomologous"] = c.cohomologous;
  j["depth"] = c.depth;
  j["vertex_count"] = c.vertex_count;
  if (c.transfer)
    j["transfer"] = to_json(*c.transfer, alphabet);
  if (c.witness)
    j["witness_orbit"] = to_string(*c.witness, alphabet);
  if (c.obstruction)
    j["obstruction"] = to_string(*c.obstruction);
  return j;
}

inline Json edge_list_json(const EdgeShift& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"source", g.vertex_name(e.source)},
                     {"target", g.vertex_name(e.target)},
                     {"label", g.alphabet().name(e.label)}});
  return edges;
}

inline Json to_json(const CrossSection& c) {
  Json j;
  j["depth"] = c.depth;
  j["vertices"] = c.graph.vertex_count();
  j["edge_count"] = c.graph.edge_count();
  j["base_period"] = base_period(c.graph);
  j["edges"] = edge_list_json(c.graph);
  return j;
}

inline Json to_json(const MixingDiagnostic& d) {
  Json j;
  j["suggestion"] = d.suggestion;
  j["note"] = d.note;
  j["omega"] = d.omega;
  j["epsilon"] = d.epsilon;
  j["samples"] = d.residues.size();
  j["max_gap"] = d.max_gap;
  j["candidate_delta"] = d.candidate_delta ? Json(*d.candidate_delta) : Json(nullptr);
  j["grid_fraction"] = d.grid_fraction ? Json(*d.grid_fraction) : Json(nullptr);
  j["bin_counts"] = d.bin_counts;
  return j;
}

} // namespace suspension

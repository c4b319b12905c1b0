#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

#include "vgk/graph.hpp"

namespace vgk {

// On-disk graph format:
//   {"nodes":[{"id":0,"label":"Assign","depth":0},...],
//    "edges":[{"id":0,"src":0,"dst":1,"type":"CF","cond":true},...]}
// Node/edge order in the file is irrelevant; ids define the graph.

inline VerificationGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
    throw Error("graph file must be an object with 'nodes' and 'edges'");
  std::vector<GraphNode> nodes;
  for (const auto& jn : j.at("nodes")) {
    if (!jn.contains("id") || !jn.contains("label") || !jn.contains("depth"))
      throw Error("graph node needs 'id', 'label' and 'depth'");
    const std::string name = jn.at("label").get<std::string>();
    auto label = label_from_name(name);
    if (!label) throw Error("unknown node label '" + name + "'");
    nodes.push_back({jn.at("id").get<int>(), *label, jn.at("depth").get<int>()});
  }
  std::vector<GraphEdge> edges;
  for (const auto& je : j.at("edges")) {
    if (!je.contains("id") || !je.contains("src") || !je.contains("dst") ||
        !je.contains("type") || !je.contains("cond"))
      throw Error("graph edge needs 'id', 'src', 'dst', 'type' and 'cond'");
    const std::string tname = je.at("type").get<std::string>();
    auto type = edge_type_from_name(tname);
    if (!type) throw Error("unknown edge type '" + tname + "'");
    edges.push_back({je.at("id").get<int>(), je.at("src").get<int>(),
                     je.at("dst").get<int>(), *type, je.at("cond").get<bool>()});
  }
  return VerificationGraph(std::move(nodes), std::move(edges));
}

inline nlohmann::json graph_to_json(const VerificationGraph& g) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const GraphNode& n : g.nodes()) {
    j["nodes"].push_back({{"id", n.id},
                          {"label", std::string(label_name(n.label))},
                          {"depth", n.depth}});
  }
  j["edges"] = nlohmann::json::array();
  for (const GraphEdge& e : g.edges()) {
    j["edges"].push_back({{"id", e.id},
                          {"src", e.src},
                          {"dst", e.dst},
                          {"type", std::string(edge_type_name(e.type))},
                          {"cond", e.cond}});
  }
  return j;
}

inline VerificationGraph load_graph(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid graph JSON: ") + e.what());
  }
  return graph_from_json(j);
}

inline std::string save_graph(const VerificationGraph& g) {
  return graph_to_json(g).dump(2) + "\n";
}

inline VerificationGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  try {
    return load_graph(text);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

inline void save_graph_file(const VerificationGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file: " + path);
  out << save_graph(g);
}

} // namespace vgk

#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "vgk/error.hpp"
#include "vgk/labels.hpp"

namespace vgk {

using NodeId = int;
using EdgeId = int;

enum class EdgeType : int { CF, CD, DD, SD };

inline constexpr std::array<std::string_view, 4> kEdgeTypeNames = {"CF", "CD",
                                                                   "DD", "SD"};

inline std::string_view edge_type_name(EdgeType t) {
  return kEdgeTypeNames[static_cast<int>(t)];
}

inline std::optional<EdgeType> edge_type_from_name(std::string_view name) {
  for (int i = 0; i < 4; ++i) {
    if (kEdgeTypeNames[i] == name) return static_cast<EdgeType>(i);
  }
  return std::nullopt;
}

// Subset of edge types selecting which outgoing edges count as a node's
// neighbourhood. Kernels are parameterized by this.
class NeighborSelector {
public:
  NeighborSelector(std::initializer_list<EdgeType> kinds) {
    for (EdgeType k : kinds) bits_ |= bit(k);
    if (bits_ == 0) throw Error("neighbor selector must be non-empty");
  }

  static NeighborSelector all() { return {EdgeType::CF, EdgeType::CD, EdgeType::DD, EdgeType::SD}; }

  // Parses "CF,CD"-style lists.
  static NeighborSelector parse(std::string_view text) {
    std::vector<EdgeType> kinds;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      auto piece = text.substr(pos, comma - pos);
      auto t = edge_type_from_name(piece);
      if (!t) throw Error("unknown edge type '" + std::string(piece) + "'");
      kinds.push_back(*t);
      pos = comma + 1;
      if (comma == text.size()) break;
    }
    NeighborSelector sel{};
    for (EdgeType k : kinds) sel.bits_ |= bit(k);
    if (sel.bits_ == 0) throw Error("neighbor selector must be non-empty");
    return sel;
  }

  bool contains(EdgeType t) const { return bits_ & bit(t); }

  // Canonical "CF,CD,DD,SD"-ordered rendering.
  std::string to_string() const {
    std::string out;
    for (int i = 0; i < 4; ++i) {
      if (!(bits_ & (1u << i))) continue;
      if (!out.empty()) out += ',';
      out += kEdgeTypeNames[i];
    }
    return out;
  }

  bool operator==(const NeighborSelector&) const = default;

private:
  NeighborSelector() = default;
  static unsigned bit(EdgeType t) { return 1u << static_cast<int>(t); }
  unsigned bits_ = 0;
};

struct GraphNode {
  NodeId id;
  NodeLabel label;
  int depth; // distance to the statement-root of the node's AST
};

struct GraphEdge {
  EdgeId id;
  NodeId src;
  NodeId dst;
  EdgeType type;
  bool cond; // branch valuation; false is only legal on CD edges
};

// Directed labeled multigraph over abstract node labels. Immutable after
// construction; the constructor validates all structural invariants, so any
// live instance is well-formed.
class VerificationGraph {
public:
  VerificationGraph() = default;

  VerificationGraph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges)
      : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(nodes_.begin(), nodes_.end(),
              [](const GraphNode& a, const GraphNode& b) { return a.id < b.id; });
    std::sort(edges_.begin(), edges_.end(),
              [](const GraphEdge& a, const GraphEdge& b) { return a.id < b.id; });
    validate();
    out_.assign(nodes_.size(), {});
    for (const GraphEdge& e : edges_) out_[e.src].push_back(e.id);
    // edges_ is sorted by id, so each out-list is ascending already
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<GraphNode>& nodes() const { return nodes_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  const GraphNode& node(NodeId id) const {
    if (id < 0 || id >= node_count()) throw Error("unknown node id " + std::to_string(id));
    return nodes_[id];
  }

  const GraphEdge& edge(EdgeId id) const {
    if (id < 0 || id >= edge_count()) throw Error("unknown edge id " + std::to_string(id));
    return edges_[id];
  }

  const std::vector<EdgeId>& out_edges(NodeId id) const {
    if (id < 0 || id >= node_count()) throw Error("unknown node id " + std::to_string(id));
    return out_[id];
  }

  int max_depth() const {
    int d = 0;
    for (const GraphNode& n : nodes_) d = std::max(d, n.depth);
    return d;
  }

private:
  void validate() const {
    const int n = static_cast<int>(nodes_.size());
    for (int i = 0; i < n; ++i) {
      if (nodes_[i].id != i)
        throw Error("node ids must be dense integers starting at 0");
      if (nodes_[i].depth < 0) throw Error("negative node depth");
    }
    std::vector<bool> has_sd_parent(n, false);
    const int m = static_cast<int>(edges_.size());
    for (int i = 0; i < m; ++i) {
      const GraphEdge& e = edges_[i];
      if (e.id != i) throw Error("edge ids must be dense integers starting at 0");
      if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
        throw Error("edge " + std::to_string(e.id) + " references a missing node");
      if (!e.cond && e.type != EdgeType::CD)
        throw Error("edge " + std::to_string(e.id) + ": cond=false is only allowed on CD edges");
      if (e.type == EdgeType::SD) {
        if (nodes_[e.dst].depth != nodes_[e.src].depth + 1)
          throw Error("SD edge " + std::to_string(e.id) + " must increase depth by 1");
        has_sd_parent[e.dst] = true;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!has_sd_parent[i] && nodes_[i].depth != 0)
        throw Error("node " + std::to_string(i) + " has no SD parent but nonzero depth");
    }
  }

  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<EdgeId>> out_;
};

// Outgoing edges of n whose type is selected, ascending by edge id.
inline std::vector<EdgeId> neighbors(const VerificationGraph& g, NodeId n,
                                     const NeighborSelector& sel) {
  std::vector<EdgeId> result;
  for (EdgeId e : g.out_edges(n)) {
    if (sel.contains(g.edge(e).type)) result.push_back(e);
  }
  return result;
}

} // namespace vgk

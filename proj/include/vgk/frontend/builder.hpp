#pragma once

#include <algorithm>
#include <tuple>
#include <vector>

#include "vgk/frontend/analyses.hpp"
#include "vgk/frontend/cfg.hpp"
#include "vgk/frontend/parser.hpp"
#include "vgk/graph.hpp"

namespace vgk::frontend {

namespace detail {

class GraphBuilder {
public:
  GraphBuilder(const Program& program, const Cfg& cfg, const ReachingDefinitions& rd,
               const std::vector<ControlDependence>& cd)
      : cfg_(cfg) {
    (void)program;
    roots_.reserve(cfg.size());
    for (int s = 0; s < cfg_.size(); ++s) roots_.push_back(build_statement_ast(s));

    std::vector<std::pair<NodeId, NodeId>> cf;
    for (const Cfg::FlowEdge& e : cfg_.edges()) {
      if (e.from < 0 || e.to >= cfg_.exit_node()) continue; // virtual entry/exit
      cf.emplace_back(roots_[e.from], roots_[e.to]);
    }
    std::vector<std::tuple<NodeId, NodeId, bool>> cdp;
    for (const ControlDependence& d : cd)
      cdp.emplace_back(roots_[d.controller], roots_[d.dependent], d.valuation);

    std::vector<std::pair<NodeId, NodeId>> dd;
    for (int s = 0; s < cfg_.size(); ++s) {
      for (const std::string& var : cfg_.statement(s).uses) {
        for (int d : rd.at(s, var)) dd.emplace_back(roots_[d], roots_[s]);
      }
    }

    std::sort(sd_.begin(), sd_.end());
    append_edges(sd_, EdgeType::SD);
    dedupe(cf);
    append_edges(cf, EdgeType::CF);
    std::sort(cdp.begin(), cdp.end());
    cdp.erase(std::unique(cdp.begin(), cdp.end()), cdp.end());
    for (auto [src, dst, val] : cdp)
      edges_.push_back({static_cast<EdgeId>(edges_.size()), src, dst, EdgeType::CD, val});
    dedupe(dd);
    append_edges(dd, EdgeType::DD);
  }

  VerificationGraph take() {
    return VerificationGraph(std::move(nodes_), std::move(edges_));
  }

private:
  NodeId add_node(NodeLabel label, int depth) {
    const NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({id, label, depth});
    return id;
  }

  static void dedupe(std::vector<std::pair<NodeId, NodeId>>& pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  }

  void append_edges(const std::vector<std::pair<NodeId, NodeId>>& pairs, EdgeType type) {
    for (auto [src, dst] : pairs)
      edges_.push_back({static_cast<EdgeId>(edges_.size()), src, dst, type, true});
  }

  NodeId build_statement_ast(int index) {
    const Stmt& s = *cfg_.statement(index).stmt;
    switch (s.kind) {
      case Stmt::Kind::Decl: {
        const NodeId root = add_node(NodeLabel::Decl, 0);
        if (s.expr) add_subtree(*s.expr, root, 1);
        return root;
      }
      case Stmt::Kind::Assign: {
        const NodeId root = add_node(NodeLabel::Assign, 0);
        attach(add_node(NodeLabel::Ref, 1), root); // assignment target
        add_subtree(*s.expr, root, 1);
        return root;
      }
      case Stmt::Kind::Incr:
      case Stmt::Kind::Decr: {
        const NodeId root =
            add_node(s.kind == Stmt::Kind::Incr ? NodeLabel::Incr : NodeLabel::Decr, 0);
        attach(add_node(NodeLabel::Ref, 1), root);
        return root;
      }
      case Stmt::Kind::While: {
        const NodeId root = add_node(NodeLabel::Loop, 0);
        add_subtree(*s.expr, root, 1);
        return root;
      }
      case Stmt::Kind::If: {
        const NodeId root = add_node(NodeLabel::If, 0);
        add_subtree(*s.expr, root, 1);
        return root;
      }
      case Stmt::Kind::Assert: {
        const NodeId root = add_node(NodeLabel::Assert, 0);
        add_subtree(*s.expr, root, 1);
        return root;
      }
      case Stmt::Kind::Call:
        return build_expr(*s.expr, 0); // the call expression is the root
      case Stmt::Kind::Return: {
        const NodeId root = add_node(NodeLabel::Function_Return, 0);
        if (s.expr) add_subtree(*s.expr, root, 1);
        return root;
      }
    }
    throw Error("unreachable statement kind");
  }

  void attach(NodeId child, NodeId parent) { sd_.emplace_back(parent, child); }

  void add_subtree(const Expr& e, NodeId parent, int depth) {
    attach(build_expr(e, depth), parent);
  }

  NodeId build_expr(const Expr& e, int depth) {
    const NodeId id = add_node(expr_label(e), depth);
    for (const ExprPtr& c : e.children) add_subtree(*c, id, depth + 1);
    return id;
  }

  static NodeLabel expr_label(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::IntLit:
        return literal_label(e.value);
      case Expr::Kind::VarRef:
        return NodeLabel::Ref;
      case Expr::Kind::Call:
        return NodeLabel::Function_Call;
      case Expr::Kind::Input:
        return NodeLabel::Input;
      case Expr::Kind::Unary:
        return e.op == "!" ? NodeLabel::UnaryOp_Not : NodeLabel::UnaryOp_Neg;
      case Expr::Kind::Binary: {
        if (e.op == "+") return NodeLabel::BinOp_Add;
        if (e.op == "-") return NodeLabel::BinOp_Sub;
        if (e.op == "*") return NodeLabel::BinOp_Mul;
        if (e.op == "/") return NodeLabel::BinOp_Div;
        if (e.op == "%") return NodeLabel::BinOp_Mod;
        if (e.op == "<") return NodeLabel::BinOp_Less;
        if (e.op == "<=") return NodeLabel::BinOp_LessEq;
        if (e.op == ">") return NodeLabel::BinOp_Greater;
        if (e.op == ">=") return NodeLabel::BinOp_GreaterEq;
        if (e.op == "==") return NodeLabel::BinOp_Eq;
        if (e.op == "!=") return NodeLabel::BinOp_NotEq;
        if (e.op == "&&") return NodeLabel::BoolOp_And;
        if (e.op == "||") return NodeLabel::BoolOp_Or;
        break;
      }
    }
    throw Error("no label for expression operator '" + e.op + "'");
  }

  const Cfg& cfg_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<std::pair<NodeId, NodeId>> sd_;
  std::vector<NodeId> roots_;
};

} // namespace detail

// Node ids: statement roots and their AST subtrees in source order, subtree
// nodes in preorder. Edge ids: SD block first, then CF, CD, DD, each sorted
// by (src, dst). Fully deterministic for a given program.
inline VerificationGraph build_verification_graph(const Program& program, const Cfg& cfg,
                                                  const ReachingDefinitions& rd,
                                                  const std::vector<ControlDependence>& cd) {
  return detail::GraphBuilder(program, cfg, rd, cd).take();
}

// Convenience pipeline: source text in, verification graph out.
inline VerificationGraph extract_graph(std::string_view source) {
  Program program = parse(source);
  Cfg cfg(program);
  ReachingDefinitions rd(cfg);
  return build_verification_graph(program, cfg, rd, control_dependencies(cfg));
}

} // namespace vgk::frontend

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vgk/error.hpp"
#include "vgk/frontend/ast.hpp"

namespace vgk::frontend {

// Intra-procedural control flow graph. Nodes are the program's statements in
// source order (one node per statement, including nested ones); entry and
// exit are virtual. Branch statements (while/if) carry true/false successor
// edges. Also records, per statement, its syntactic controller (the nearest
// enclosing while/if and the valuation under which it runs) plus the
// defined/used variable sets the dependence analyses need.
class Cfg {
public:
  static constexpr int kEntry = -1;

  enum class Branch { None, True, False };

  struct FlowEdge {
    int from; // kEntry or statement index
    int to;   // statement index or exit()
    Branch branch;
  };

  struct StmtInfo {
    const Stmt* stmt;
    int controller = -1;        // enclosing while/if statement index, -1 at top level
    bool controller_branch = true;
    std::string def;            // variable defined here, empty if none
    std::set<std::string> uses;
  };

  explicit Cfg(const Program& program) {
    flatten(program.statements, -1, true);
    const int first = build_seq(index_range(program.statements), exit_node());
    edges_.push_back({kEntry, first, Branch::None});
    succs_.assign(stmts_.size() + 1, {});
    preds_.assign(stmts_.size() + 1, {});
    for (const FlowEdge& e : edges_) {
      if (e.from >= 0) succs_[e.from].push_back(e);
      if (e.to >= 0 && e.to < exit_node()) preds_[e.to].push_back(e.from);
    }
  }

  int size() const { return static_cast<int>(stmts_.size()); }
  int exit_node() const { return static_cast<int>(stmts_.size()); }

  const std::vector<StmtInfo>& statements() const { return stmts_; }
  const StmtInfo& statement(int i) const { return stmts_.at(i); }
  const std::vector<FlowEdge>& edges() const { return edges_; }
  const std::vector<FlowEdge>& successors(int i) const { return succs_.at(i); }
  const std::vector<int>& predecessors(int i) const { return preds_.at(i); }

private:
  // Assigns flat indices in source order and records controllers.
  void flatten(const std::vector<StmtPtr>& stmts, int controller, bool branch) {
    for (const StmtPtr& s : stmts) {
      const int index = static_cast<int>(stmts_.size());
      index_of_[s.get()] = index;
      StmtInfo info;
      info.stmt = s.get();
      info.controller = controller;
      info.controller_branch = branch;
      collect_def_uses(*s, info);
      stmts_.push_back(std::move(info));
      if (s->kind == Stmt::Kind::While) {
        flatten(s->body, index, true);
      } else if (s->kind == Stmt::Kind::If) {
        flatten(s->body, index, true);
        flatten(s->else_body, index, false);
      }
    }
  }

  static void collect_vars(const Expr* e, std::set<std::string>& out) {
    if (!e) return;
    if (e->kind == Expr::Kind::VarRef) out.insert(e->name);
    for (const ExprPtr& c : e->children) collect_vars(c.get(), out);
  }

  static void collect_def_uses(const Stmt& s, StmtInfo& info) {
    switch (s.kind) {
      case Stmt::Kind::Decl:
        if (s.expr) { // only an initialized declaration defines the variable
          info.def = s.var;
          collect_vars(s.expr.get(), info.uses);
        }
        break;
      case Stmt::Kind::Assign:
        info.def = s.var;
        collect_vars(s.expr.get(), info.uses);
        break;
      case Stmt::Kind::Incr:
      case Stmt::Kind::Decr:
        info.def = s.var;
        info.uses.insert(s.var);
        break;
      case Stmt::Kind::While:
      case Stmt::Kind::If:
      case Stmt::Kind::Assert:
      case Stmt::Kind::Call:
      case Stmt::Kind::Return:
        collect_vars(s.expr.get(), info.uses);
        break;
    }
  }

  std::vector<const Stmt*> index_range(const std::vector<StmtPtr>& stmts) const {
    std::vector<const Stmt*> out;
    out.reserve(stmts.size());
    for (const StmtPtr& s : stmts) out.push_back(s.get());
    return out;
  }

  // Wires flow edges for a statement sequence whose continuation is `follow`;
  // returns the sequence's entry node (follow itself when empty).
  int build_seq(const std::vector<const Stmt*>& stmts, int follow) {
    int next = follow;
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
      next = build_stmt(**it, next);
    }
    return next;
  }

  int build_stmt(const Stmt& s, int follow) {
    const int me = index_of_.at(&s);
    switch (s.kind) {
      case Stmt::Kind::While: {
        const int body_entry = build_seq(index_range(s.body), me);
        edges_.push_back({me, body_entry, Branch::True});
        edges_.push_back({me, follow, Branch::False});
        break;
      }
      case Stmt::Kind::If: {
        const int then_entry = build_seq(index_range(s.body), follow);
        const int else_entry = build_seq(index_range(s.else_body), follow);
        edges_.push_back({me, then_entry, Branch::True});
        edges_.push_back({me, else_entry, Branch::False});
        break;
      }
      case Stmt::Kind::Return:
        edges_.push_back({me, exit_node(), Branch::None});
        break;
      default:
        edges_.push_back({me, follow, Branch::None});
        break;
    }
    return me;
  }

  std::vector<StmtInfo> stmts_;
  std::vector<FlowEdge> edges_;
  std::vector<std::vector<FlowEdge>> succs_;
  std::vector<std::vector<int>> preds_;
  std::map<const Stmt*, int> index_of_;
};

inline Cfg build_cfg(const Program& program) { return Cfg(program); }

} // namespace vgk::frontend

#pragma once

#include <memory>
#include <string>
#include <vector>

namespace vgk::frontend {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind {
    IntLit,  // value
    VarRef,  // name
    Call,    // name + args (declared prototype)
    Input,   // input() or a call to an undeclared function
    Unary,   // op in {"!", "-"}, one child
    Binary,  // op, two children
  };

  Kind kind;
  long long value = 0;
  std::string name;
  std::string op;
  std::vector<ExprPtr> children;
  int line = 0, col = 0;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum class Kind {
    Decl,    // var [+ init expr]
    Assign,  // var = expr
    Incr,    // var++
    Decr,    // var--
    While,   // cond expr + body
    If,      // cond expr + body + else_body
    Assert,  // expr
    Call,    // bare call statement (expr is Call or Input)
    Return,  // [expr]
  };

  Kind kind;
  std::string var;
  ExprPtr expr;
  std::vector<StmtPtr> body;
  std::vector<StmtPtr> else_body;
  int line = 0, col = 0;
};

// A parsed translation unit: optional prototypes, then either one function
// definition or a bare statement list (its body).
struct Program {
  std::vector<std::string> prototypes;
  std::string function_name; // empty for a bare statement list
  std::vector<StmtPtr> statements;
};

inline int count_statements(const std::vector<StmtPtr>& stmts) {
  int n = 0;
  for (const auto& s : stmts) {
    n += 1 + count_statements(s->body) + count_statements(s->else_body);
  }
  return n;
}

inline int count_statements(const Program& p) { return count_statements(p.statements); }

} // namespace vgk::frontend

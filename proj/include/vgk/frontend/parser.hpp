#pragma once

#include <set>
#include <string>
#include <vector>

#include "vgk/frontend/ast.hpp"
#include "vgk/frontend/lexer.hpp"

namespace vgk::frontend {

// Recursive-descent parser for the mini-C subset (docs/grammar.md).
// Out-of-subset constructs fail with a targeted message rather than a bare
// syntax error. Variables must be declared before use.
class Parser {
public:
  explicit Parser(std::string_view source) : toks_(lex(source)) {}

  Program parse_program() {
    Program prog;
    // leading prototypes / optional single function definition
    while (peek().is_keyword("int") && peek(1).kind == Token::Kind::Ident &&
           peek(2).is_punct("(")) {
      const Token& name = peek(1);
      eat(); // int
      eat(); // ident
      parse_prototype_params();
      if (peek().is_punct(";")) {
        eat();
        if (!functions_.insert(name.text).second)
          fail("duplicate declaration of function '" + name.text + "'", name);
        prog.prototypes.push_back(name.text);
        continue;
      }
      if (peek().is_punct("{")) {
        prog.function_name = name.text;
        functions_.insert(name.text);
        prog.statements = parse_block();
        expect_end();
        return prog;
      }
      fail("expected ';' or '{' after function signature", peek());
    }
    // bare statement list
    while (peek().kind != Token::Kind::End) {
      append_stmt(prog.statements);
    }
    return prog;
  }

private:
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.col);
  }

  const Token& peek(int ahead = 0) const {
    const size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }

  const Token& eat() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  const Token& expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) fail("expected '" + std::string(p) + "'", peek());
    return eat();
  }

  void expect_end() {
    if (peek().kind != Token::Kind::End)
      fail("only a single function definition is supported", peek());
  }

  void reject_unsupported(const Token& t) const {
    if (t.kind != Token::Kind::Keyword) return;
    static constexpr std::string_view outside[] = {
        "struct", "goto",   "for",  "switch",   "do",     "break",
        "continue", "void", "char", "float",    "double", "long",
        "short",  "union",  "enum", "typedef",  "static", "const",
        "unsigned", "signed", "sizeof"};
    for (auto k : outside) {
      if (t.text == k)
        fail("unsupported construct: '" + t.text + "' is outside the subset", t);
    }
  }

  void parse_prototype_params() {
    expect_punct("(");
    if (peek().is_punct(")")) {
      eat();
      return;
    }
    while (true) {
      reject_unsupported(peek());
      if (!peek().is_keyword("int")) fail("prototype parameters must be 'int'", peek());
      eat();
      if (peek().is_punct("*")) fail("unsupported construct: pointers", peek());
      if (peek().kind == Token::Kind::Ident) eat(); // parameter name is optional
      if (peek().is_punct(",")) {
        eat();
        continue;
      }
      expect_punct(")");
      break;
    }
  }

  std::vector<StmtPtr> parse_block() {
    expect_punct("{");
    std::vector<StmtPtr> stmts;
    while (!peek().is_punct("}")) {
      if (peek().kind == Token::Kind::End) fail("unterminated block", peek());
      append_stmt(stmts);
    }
    eat(); // }
    return stmts;
  }

  // Parses one statement into `out`; empty statements add nothing.
  void append_stmt(std::vector<StmtPtr>& out) {
    const Token& t = peek();
    reject_unsupported(t);
    if (t.is_punct(";")) {
      eat();
      return;
    }
    if (t.is_punct("{")) fail("free-standing blocks are not supported", t);
    if (t.is_keyword("int")) {
      out.push_back(parse_decl());
      return;
    }
    if (t.is_keyword("while")) {
      out.push_back(parse_while());
      return;
    }
    if (t.is_keyword("if")) {
      out.push_back(parse_if());
      return;
    }
    if (t.is_keyword("assert")) {
      out.push_back(parse_assert());
      return;
    }
    if (t.is_keyword("return")) {
      out.push_back(parse_return());
      return;
    }
    if (t.kind == Token::Kind::Ident) {
      out.push_back(parse_ident_stmt());
      return;
    }
    fail("expected a statement", t);
  }

  StmtPtr make_stmt(Stmt::Kind kind, const Token& at) {
    auto s = std::make_unique<Stmt>();
    s->kind = kind;
    s->line = at.line;
    s->col = at.col;
    return s;
  }

  StmtPtr parse_decl() {
    const Token& kw = eat(); // int
    if (peek().is_punct("*")) fail("unsupported construct: pointers", peek());
    if (peek().kind != Token::Kind::Ident) fail("expected variable name", peek());
    const Token name = eat();
    if (peek().is_punct("[")) fail("unsupported construct: arrays", peek());
    if (peek().is_punct("("))
      fail("function declarations are only allowed before the statement list", peek());
    if (!variables_.insert(name.text).second)
      fail("redeclaration of '" + name.text + "'", name);
    auto s = make_stmt(Stmt::Kind::Decl, kw);
    s->var = name.text;
    if (peek().is_punct("=")) {
      eat();
      s->expr = parse_expr();
    }
    expect_punct(";");
    return s;
  }

  StmtPtr parse_ident_stmt() {
    const Token name = eat();
    if (peek().is_punct("=")) {
      require_declared(name);
      eat();
      auto s = make_stmt(Stmt::Kind::Assign, name);
      s->var = name.text;
      s->expr = parse_expr();
      expect_punct(";");
      return s;
    }
    if (peek().is_punct("++") || peek().is_punct("--")) {
      require_declared(name);
      const bool inc = peek().is_punct("++");
      eat();
      auto s = make_stmt(inc ? Stmt::Kind::Incr : Stmt::Kind::Decr, name);
      s->var = name.text;
      expect_punct(";");
      return s;
    }
    if (peek().is_punct("(")) {
      auto s = make_stmt(Stmt::Kind::Call, name);
      s->expr = parse_call(name);
      expect_punct(";");
      return s;
    }
    if (peek().is_punct("[")) fail("unsupported construct: arrays", peek());
    if (peek().is_punct(".")) fail("unsupported construct: structs", peek());
    fail("expected '=', '++', '--' or '(' after identifier", peek());
  }

  StmtPtr parse_while() {
    const Token& kw = eat();
    expect_punct("(");
    auto s = make_stmt(Stmt::Kind::While, kw);
    s->expr = parse_expr();
    expect_punct(")");
    s->body = parse_body();
    return s;
  }

  StmtPtr parse_if() {
    const Token& kw = eat();
    expect_punct("(");
    auto s = make_stmt(Stmt::Kind::If, kw);
    s->expr = parse_expr();
    expect_punct(")");
    s->body = parse_body();
    if (peek().is_keyword("else")) {
      eat();
      s->else_body = parse_body();
    }
    return s;
  }

  StmtPtr parse_assert() {
    const Token& kw = eat();
    expect_punct("(");
    auto s = make_stmt(Stmt::Kind::Assert, kw);
    s->expr = parse_expr();
    expect_punct(")");
    expect_punct(";");
    return s;
  }

  StmtPtr parse_return() {
    const Token& kw = eat();
    auto s = make_stmt(Stmt::Kind::Return, kw);
    if (!peek().is_punct(";")) s->expr = parse_expr();
    expect_punct(";");
    return s;
  }

  std::vector<StmtPtr> parse_body() {
    if (peek().is_punct("{")) return parse_block();
    std::vector<StmtPtr> stmts;
    append_stmt(stmts);
    return stmts;
  }

  void require_declared(const Token& name) const {
    if (!variables_.count(name.text))
      fail("use of undeclared variable '" + name.text + "'", name);
  }

  ExprPtr make_expr(Expr::Kind kind, const Token& at) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = at.line;
    e->col = at.col;
    return e;
  }

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_binary_chain(ExprPtr (Parser::*next)(),
                             std::initializer_list<std::string_view> ops) {
    ExprPtr lhs = (this->*next)();
    while (true) {
      bool matched = false;
      for (auto op : ops) {
        if (peek().is_punct(op)) {
          const Token t = eat();
          auto e = make_expr(Expr::Kind::Binary, t);
          e->op = t.text;
          e->children.push_back(std::move(lhs));
          e->children.push_back((this->*next)());
          lhs = std::move(e);
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  ExprPtr parse_or() { return parse_binary_chain(&Parser::parse_and, {"||"}); }
  ExprPtr parse_and() { return parse_binary_chain(&Parser::parse_eq, {"&&"}); }
  ExprPtr parse_eq() { return parse_binary_chain(&Parser::parse_rel, {"==", "!="}); }
  ExprPtr parse_rel() {
    return parse_binary_chain(&Parser::parse_add, {"<=", ">=", "<", ">"});
  }
  ExprPtr parse_add() { return parse_binary_chain(&Parser::parse_mul, {"+", "-"}); }
  ExprPtr parse_mul() {
    return parse_binary_chain(&Parser::parse_unary, {"*", "/", "%"});
  }

  ExprPtr parse_unary() {
    if (peek().is_punct("!") || peek().is_punct("-")) {
      const Token t = eat();
      ExprPtr operand = parse_unary();
      if (t.text == "-" && operand->kind == Expr::Kind::IntLit) {
        operand->value = -operand->value; // negative literals stay literals
        return operand;
      }
      auto e = make_expr(Expr::Kind::Unary, t);
      e->op = t.text;
      e->children.push_back(std::move(operand));
      return e;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    reject_unsupported(t);
    if (t.is_punct("&") || t.is_punct("|"))
      fail("unsupported construct: bitwise operators", t);
    if (t.is_punct("*")) fail("unsupported construct: pointers", t);
    if (t.kind == Token::Kind::Int) {
      eat();
      auto e = make_expr(Expr::Kind::IntLit, t);
      e->value = t.value;
      return e;
    }
    if (t.is_punct("(")) {
      eat();
      ExprPtr e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (t.kind == Token::Kind::Ident) {
      const Token name = eat();
      if (peek().is_punct("(")) return parse_call(name);
      if (peek().is_punct("[")) fail("unsupported construct: arrays", peek());
      if (peek().is_punct(".")) fail("unsupported construct: structs", peek());
      require_declared(name);
      auto e = make_expr(Expr::Kind::VarRef, name);
      e->name = name.text;
      return e;
    }
    fail("expected an expression", t);
  }

  // input() and calls to undeclared functions become Input nodes; calls to
  // declared prototypes keep their call structure.
  ExprPtr parse_call(const Token& name) {
    expect_punct("(");
    std::vector<ExprPtr> args;
    if (!peek().is_punct(")")) {
      while (true) {
        args.push_back(parse_expr());
        if (peek().is_punct(",")) {
          eat();
          continue;
        }
        break;
      }
    }
    expect_punct(")");
    const bool known = functions_.count(name.text) > 0;
    const bool intrinsic = name.text == "input";
    auto e = make_expr(known && !intrinsic ? Expr::Kind::Call : Expr::Kind::Input, name);
    e->name = name.text;
    e->children = std::move(args);
    return e;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> variables_;
  std::set<std::string> functions_;
};

inline Program parse(std::string_view source) { return Parser(source).parse_program(); }

} // namespace vgk::frontend

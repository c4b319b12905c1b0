#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "vgk/error.hpp"

namespace vgk::frontend {

struct Token {
  enum class Kind { Ident, Keyword, Int, Punct, End };
  Kind kind;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;

  bool is(Kind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(Kind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(Kind::Keyword, t); }
};

// Keywords of the subset plus reserved words we reject with a targeted
// message in the parser.
inline bool is_keyword_text(std::string_view s) {
  static constexpr std::string_view kw[] = {
      "int",    "while", "if",     "else",   "return", "assert",
      "struct", "goto",  "for",    "switch", "do",     "break",
      "continue", "void", "char",  "float",  "double", "long",
      "short",  "union", "enum",   "typedef", "static", "const",
      "unsigned", "signed", "sizeof"};
  for (auto k : kw)
    if (k == s) return true;
  return false;
}

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (i < src.size() && src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      const int sl = line, sc = col;
      advance(2);
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
      if (i + 1 >= src.size()) throw ParseError("unterminated comment", sl, sc);
      advance(2);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = std::string(src.substr(i, j - i));
      try {
        t.value = std::stoll(t.text);
      } catch (const std::exception&) {
        throw ParseError("integer literal out of range", line, col);
      }
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.text = std::string(src.substr(i, j - i));
      t.kind = is_keyword_text(t.text) ? Token::Kind::Keyword : Token::Kind::Ident;
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    // multi-char operators first
    static constexpr std::string_view two[] = {"<=", ">=", "==", "!=", "&&",
                                               "||", "++", "--"};
    bool matched = false;
    if (i + 1 < src.size()) {
      const std::string_view pair = src.substr(i, 2);
      for (auto op : two) {
        if (pair == op) {
          t.kind = Token::Kind::Punct;
          t.text = std::string(op);
          advance(2);
          out.push_back(std::move(t));
          matched = true;
          break;
        }
      }
    }
    if (matched) continue;
    static constexpr std::string_view single = "+-*/%<>=!(){};,[]&|.";
    if (single.find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      advance(1);
      out.push_back(std::move(t));
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  Token end;
  end.kind = Token::Kind::End;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

} // namespace vgk::frontend

#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <string_view>

namespace vgk {

// Closed vocabulary of abstract node labels. Graphs may only use labels from
// this table; loaders reject anything else. The table is versioned so that
// persisted artifacts (graphs, compression tables) can be cross-checked.
enum class NodeLabel : int {
  // statement roots
  Loop,
  If,
  Decl,
  Assign,
  Incr,
  Decr,
  Assert,
  Function_Call,
  Function_Return,
  Input,
  // expression nodes
  Ref,
  Int_Literal_Small,  // |v| <= 10
  Int_Literal_Medium, // 10 < |v| <= 100
  Int_Literal_Large,  // |v| > 100
  BinOp_Add,
  BinOp_Sub,
  BinOp_Mul,
  BinOp_Div,
  BinOp_Mod,
  BinOp_Less,
  BinOp_LessEq,
  BinOp_Greater,
  BinOp_GreaterEq,
  BinOp_Eq,
  BinOp_NotEq,
  BoolOp_And,
  BoolOp_Or,
  UnaryOp_Not,
  UnaryOp_Neg,
};

inline constexpr int kLabelVocabularyVersion = 1;

inline constexpr std::array<std::string_view, 29> kLabelNames = {
    "Loop",
    "If",
    "Decl",
    "Assign",
    "Incr",
    "Decr",
    "Assert",
    "Function_Call",
    "Function_Return",
    "Input",
    "Ref",
    "Int_Literal_Small",
    "Int_Literal_Medium",
    "Int_Literal_Large",
    "BinOp_Add",
    "BinOp_Sub",
    "BinOp_Mul",
    "BinOp_Div",
    "BinOp_Mod",
    "BinOp_Less",
    "BinOp_LessEq",
    "BinOp_Greater",
    "BinOp_GreaterEq",
    "BinOp_Eq",
    "BinOp_NotEq",
    "BoolOp_And",
    "BoolOp_Or",
    "UnaryOp_Not",
    "UnaryOp_Neg",
};

inline constexpr int kLabelCount = static_cast<int>(kLabelNames.size());

inline std::string_view label_name(NodeLabel label) {
  return kLabelNames[static_cast<int>(label)];
}

inline std::optional<NodeLabel> label_from_name(std::string_view name) {
  for (int i = 0; i < kLabelCount; ++i) {
    if (kLabelNames[i] == name) return static_cast<NodeLabel>(i);
  }
  return std::nullopt;
}

// Integer literals are abstracted into coarse magnitude buckets (by absolute
// value, so negative literals bucket like their positive counterparts).
inline NodeLabel literal_label(long long value) {
  const long long mag = value < 0 ? -value : value;
  if (mag <= 10) return NodeLabel::Int_Literal_Small;
  if (mag <= 100) return NodeLabel::Int_Literal_Medium;
  return NodeLabel::Int_Literal_Large;
}

} // namespace vgk

#pragma once

#include <string>
#include <vector>

#include "vgk/error.hpp"

namespace vgk {

// Permutation over K tool labels: position(i) is the 1-based rank of tool i
// (1 = best). Validated to be a bijection on 1..K.
class Ranking {
public:
  explicit Ranking(std::vector<int> positions) : pos_(std::move(positions)) {
    const int k = static_cast<int>(pos_.size());
    if (k < 1) throw Error("ranking must cover at least one label");
    std::vector<bool> seen(k + 1, false);
    for (int p : pos_) {
      if (p < 1 || p > k || seen[p])
        throw Error("ranking positions must be a permutation of 1..K");
      seen[p] = true;
    }
  }

  int size() const { return static_cast<int>(pos_.size()); }
  int position(int tool) const { return pos_.at(tool); }
  const std::vector<int>& positions() const { return pos_; }

  // Tool indices from rank 1 to rank K.
  std::vector<int> order() const {
    std::vector<int> ord(pos_.size());
    for (int i = 0; i < size(); ++i) ord[pos_[i] - 1] = i;
    return ord;
  }

  Ranking reversed() const {
    std::vector<int> rev(pos_.size());
    const int k = size();
    for (int i = 0; i < k; ++i) rev[i] = k + 1 - pos_[i];
    return Ranking(std::move(rev));
  }

  bool operator==(const Ranking&) const = default;

private:
  std::vector<int> pos_;
};

// S(p, q) = 1 - 6 sum_i (p(i) - q(i))^2 / (K (K^2 - 1)), in [-1, 1].
inline double spearman(const Ranking& p, const Ranking& q) {
  if (p.size() != q.size()) throw Error("spearman: rankings differ in length");
  const int k = p.size();
  if (k < 2) throw Error("spearman needs K >= 2");
  long long sq = 0;
  for (int i = 0; i < k; ++i) {
    const long long d = p.position(i) - q.position(i);
    sq += d * d;
  }
  return 1.0 - 6.0 * static_cast<double>(sq) /
                   (static_cast<double>(k) * (static_cast<double>(k) * k - 1.0));
}

inline double spearman_loss(const Ranking& p, const Ranking& q) {
  return 1.0 - spearman(p, q);
}

// Fixed, ordered label set; the order defines tool indices for an experiment.
struct ToolSet {
  std::vector<std::string> names;

  explicit ToolSet(std::vector<std::string> n) : names(std::move(n)) {
    if (names.size() < 2) throw Error("tool set needs at least two tools");
    for (size_t i = 0; i < names.size(); ++i) {
      for (size_t j = i + 1; j < names.size(); ++j) {
        if (names[i] == names[j]) throw Error("duplicate tool name: " + names[i]);
      }
    }
  }

  int size() const { return static_cast<int>(names.size()); }

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return static_cast<int>(i);
    }
    throw Error("unknown tool: " + name);
  }
};

} // namespace vgk

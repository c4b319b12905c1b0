#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "vgk/ranking/ranking.hpp"
#include "vgk/svm/smo.hpp"
#include "vgk/wl/kernel.hpp"

namespace vgk {

// Label ranking by pairwise comparison: one preference classifier per
// unordered tool pair (i,j), i<j, predicting "i before j". K(K-1)/2 models.
struct RpcEnsemble {
  ToolSet tools;
  double C = 1.0;
  std::string kernel_fingerprint;
  std::vector<PairwiseModel> models; // pair (i,j), i<j, in row-major pair order

  static int pair_index(int i, int j, int k) {
    // (0,1),(0,2),...,(0,K-1),(1,2),...
    return i * k - i * (i + 1) / 2 + (j - i - 1);
  }

  const PairwiseModel& model(int i, int j) const {
    return models.at(pair_index(i, j, tools.size()));
  }
};

// Builds the binary dataset for pair (i, j): positive iff the ranking places
// i before j. Total rankings make every instance labeled.
inline BinaryDataset pair_dataset(const std::vector<Ranking>& rankings, int i, int j) {
  BinaryDataset d;
  for (size_t x = 0; x < rankings.size(); ++x) {
    d.indices.push_back(static_cast<int>(x));
    d.labels.push_back(rankings[x].position(i) < rankings[x].position(j) ? 1 : -1);
  }
  return d;
}

inline RpcEnsemble rpc_train(const GramMatrix& gram, const std::vector<Ranking>& rankings,
                             const ToolSet& tools, double c) {
  if (static_cast<int>(rankings.size()) != gram.size())
    throw Error("rpc_train: one ranking per gram row required");
  for (const Ranking& r : rankings) {
    if (r.size() != tools.size())
      throw Error("rpc_train: ranking length does not match tool set");
  }
  RpcEnsemble ens{tools, c, gram.config_fingerprint, {}};
  const int k = tools.size();
  ens.models.reserve(k * (k - 1) / 2);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const BinaryDataset d = pair_dataset(rankings, i, j);
      PairwiseModel m = train(gram, d, c);
      fit_platt_on_training(m, gram, d);
      ens.models.push_back(std::move(m));
    }
  }
  return ens;
}

struct RpcPrediction {
  Ranking ranking;
  std::vector<double> scores;            // S_i, sums to K(K-1)/2
  std::vector<std::vector<double>> prob; // M_ij; M_ji = 1 - M_ij; diagonal 0
};

// Weighted voting: S_i = sum_j M_ij; tools sorted by descending score, ties
// by ascending tool index. `row[t]` = k(x_t, query) in gram order.
inline RpcPrediction rpc_predict(const RpcEnsemble& ens, std::span<const double> row) {
  const int k = ens.tools.size();
  std::vector<std::vector<double>> prob(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const PairwiseModel& m = ens.model(i, j);
      const double p = m.probability(m.decision(row));
      prob[i][j] = p;
      prob[j][i] = 1.0 - p;
    }
  }
  std::vector<double> scores(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (j != i) scores[i] += prob[i][j];
    }
  }
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  std::vector<int> positions(k);
  for (int r = 0; r < k; ++r) positions[order[r]] = r + 1;
  return {Ranking(std::move(positions)), std::move(scores), std::move(prob)};
}

// Learning-free consensus: sort tools by mean training position (ascending,
// ties by tool index). For Spearman distance this mean-rank solution attains
// the maximum of sum_n S(pi, pi_n).
inline Ranking default_predictor(const std::vector<Ranking>& rankings) {
  if (rankings.empty()) throw Error("default_predictor needs at least one ranking");
  const int k = rankings.front().size();
  std::vector<double> mean(k, 0.0);
  for (const Ranking& r : rankings) {
    if (r.size() != k) throw Error("default_predictor: mixed ranking lengths");
    for (int i = 0; i < k; ++i) mean[i] += r.position(i);
  }
  for (double& m : mean) m /= static_cast<double>(rankings.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return mean[a] < mean[b]; });
  std::vector<int> positions(k);
  for (int r = 0; r < k; ++r) positions[order[r]] = r + 1;
  return Ranking(std::move(positions));
}

} // namespace vgk

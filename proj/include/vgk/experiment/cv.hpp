#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "vgk/data/dataset.hpp"
#include "vgk/ranking/rpc.hpp"
#include "vgk/wl/engine.hpp"
#include "vgk/wl/gram_io.hpp"

namespace vgk {

struct ExperimentConfig {
  std::vector<KernelComponent> kernel;
  double C = 1.0;
  int folds = 10;
  std::uint64_t seed = 0;
  int repeats = 1;
};

struct FoldResult {
  int fold = 0;
  int test_size = 0;
  double spearman = 0.0;         // mean test Spearman of the RPC predictor
  double default_spearman = 0.0; // mean test Spearman of the default predictor
  double train_seconds = 0.0;
  double test_seconds = 0.0;
};

struct CvRun {
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  double mean = 0.0, stddev = 0.0;
  double default_mean = 0.0, default_stddev = 0.0;
  double gram_seconds = 0.0;
};

struct CvReport {
  ExperimentConfig config;
  std::string kernel_fingerprint;
  std::vector<CvRun> runs;
  double mean = 0.0, stddev = 0.0;
  double default_mean = 0.0, default_stddev = 0.0;
};

namespace detail {

// Explicit Fisher-Yates so fold assignment does not depend on the standard
// library's std::shuffle implementation.
inline std::vector<int> seeded_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

inline std::pair<double, double> mean_std(const std::vector<double>& xs) {
  const int n = static_cast<int>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  if (n > 1) {
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= (n - 1);
  }
  return {mean, std::sqrt(var)};
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace detail

// One k-fold cross-validation pass: seeded shuffle, round-robin fold
// assignment (sizes differ by at most one), RPC trained per fold on the
// precomputed Gram, compared per test task against the true ranking via
// Spearman. The default predictor is refit on each fold's training split.
inline CvRun cross_validate(const Dataset& ds, const ExperimentConfig& cfg,
                            std::uint64_t seed) {
  const int n = ds.size();
  if (cfg.folds < 2) throw Error("cross-validation needs at least 2 folds");
  if (n < cfg.folds) throw Error("dataset smaller than the fold count");

  CvRun run;
  run.seed = seed;

  const auto gram_start = std::chrono::steady_clock::now();
  KernelEngine engine(cfg.kernel);
  const GramMatrix full = engine.compute_gram(ds.graph_pointers(), ds.task_ids);
  run.gram_seconds = detail::seconds_since(gram_start);

  const std::vector<int> perm = detail::seeded_permutation(n, seed);
  std::vector<int> fold_of(n);
  for (int t = 0; t < n; ++t) fold_of[perm[t]] = t % cfg.folds;

  std::vector<double> fold_means, fold_default_means;
  for (int f = 0; f < cfg.folds; ++f) {
    std::vector<int> train_idx, test_idx;
    for (int i = 0; i < n; ++i) (fold_of[i] == f ? test_idx : train_idx).push_back(i);

    const auto train_start = std::chrono::steady_clock::now();
    GramMatrix sub;
    sub.config_fingerprint = full.config_fingerprint;
    const int tn = static_cast<int>(train_idx.size());
    sub.tasks.reserve(tn);
    for (int i : train_idx) sub.tasks.push_back(ds.task_ids[i]);
    sub.values.assign(tn, std::vector<double>(tn));
    for (int a = 0; a < tn; ++a) {
      for (int b = 0; b < tn; ++b) sub.values[a][b] = full.at(train_idx[a], train_idx[b]);
    }
    std::vector<Ranking> train_rankings;
    train_rankings.reserve(tn);
    for (int i : train_idx) train_rankings.push_back(ds.rankings[i]);
    const RpcEnsemble ens = rpc_train(sub, train_rankings, ds.tools, cfg.C);
    const Ranking consensus = default_predictor(train_rankings);
    const double train_s = detail::seconds_since(train_start);

    const auto test_start = std::chrono::steady_clock::now();
    double sum = 0.0, dsum = 0.0;
    std::vector<double> row(tn);
    for (int t : test_idx) {
      for (int a = 0; a < tn; ++a) row[a] = full.at(t, train_idx[a]);
      const RpcPrediction pred = rpc_predict(ens, row);
      sum += spearman(pred.ranking, ds.rankings[t]);
      dsum += spearman(consensus, ds.rankings[t]);
    }
    const double test_s = detail::seconds_since(test_start);

    FoldResult fr;
    fr.fold = f;
    fr.test_size = static_cast<int>(test_idx.size());
    fr.spearman = sum / static_cast<double>(test_idx.size());
    fr.default_spearman = dsum / static_cast<double>(test_idx.size());
    fr.train_seconds = train_s;
    fr.test_seconds = test_s;
    run.folds.push_back(fr);
    fold_means.push_back(fr.spearman);
    fold_default_means.push_back(fr.default_spearman);
  }
  std::tie(run.mean, run.stddev) = detail::mean_std(fold_means);
  std::tie(run.default_mean, run.default_stddev) = detail::mean_std(fold_default_means);
  return run;
}

// Repeats run with seeds seed, seed+1, ...; the overall mean/std are across
// folds for a single run and across run means otherwise.
inline CvReport run_experiment(const Dataset& ds, const ExperimentConfig& cfg) {
  if (cfg.repeats < 1) throw Error("repeats must be >= 1");
  CvReport report;
  report.config = cfg;
  report.kernel_fingerprint = KernelEngine(cfg.kernel).fingerprint();
  for (int r = 0; r < cfg.repeats; ++r)
    report.runs.push_back(cross_validate(ds, cfg, cfg.seed + static_cast<std::uint64_t>(r)));
  if (cfg.repeats == 1) {
    report.mean = report.runs[0].mean;
    report.stddev = report.runs[0].stddev;
    report.default_mean = report.runs[0].default_mean;
    report.default_stddev = report.runs[0].default_stddev;
  } else {
    std::vector<double> means, dmeans;
    for (const CvRun& r : report.runs) {
      means.push_back(r.mean);
      dmeans.push_back(r.default_mean);
    }
    std::tie(report.mean, report.stddev) = detail::mean_std(means);
    std::tie(report.default_mean, report.default_stddev) = detail::mean_std(dmeans);
  }
  return report;
}

// Canonical report JSON. Wall-clock timings are only included on request:
// the canonical report is byte-identical across runs with equal inputs and
// seed, which timings would break.
inline nlohmann::json report_to_json(const CvReport& report, bool include_timings = false) {
  nlohmann::json jk = nlohmann::json::array();
  for (const KernelComponent& c : report.config.kernel) {
    jk.push_back({{"weight", c.weight},
                  {"edges", c.config.selector.to_string()},
                  {"depth", c.config.depth},
                  {"iters", c.config.iterations}});
  }
  nlohmann::json runs = nlohmann::json::array();
  for (const CvRun& run : report.runs) {
    nlohmann::json folds = nlohmann::json::array();
    for (const FoldResult& f : run.folds) {
      nlohmann::json jf = {{"fold", f.fold},
                           {"test_size", f.test_size},
                           {"spearman", f.spearman},
                           {"default_spearman", f.default_spearman}};
      if (include_timings) {
        jf["train_seconds"] = f.train_seconds;
        jf["test_seconds"] = f.test_seconds;
      }
      folds.push_back(jf);
    }
    nlohmann::json jr = {{"seed", run.seed},
                         {"folds", folds},
                         {"mean", run.mean},
                         {"std", run.stddev},
                         {"default_mean", run.default_mean},
                         {"default_std", run.default_stddev}};
    if (include_timings) jr["gram_seconds"] = run.gram_seconds;
    runs.push_back(jr);
  }
  return {{"config",
           {{"kernel", jk},
            {"fingerprint", report.kernel_fingerprint},
            {"C", report.config.C},
            {"folds", report.config.folds},
            {"seed", report.config.seed},
            {"repeats", report.config.repeats}}},
          {"runs", runs},
          {"overall",
           {{"mean", report.mean},
            {"std", report.stddev},
            {"default_mean", report.default_mean},
            {"default_std", report.default_stddev}}}};
}

} // namespace vgk

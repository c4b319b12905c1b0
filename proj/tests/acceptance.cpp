// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 9 drives the installed CLI binary (path in argv[1]).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "support/random_graphs.hpp"
#include "support/synthetic.hpp"
#include "support/temp_dir.hpp"
#include "vgk/data/dataset.hpp"
#include "vgk/experiment/cv.hpp"
#include "vgk/frontend/builder.hpp"
#include "vgk/graph_io.hpp"
#include "vgk/numeric.hpp"
#include "vgk/ranking/rpc.hpp"
#include "vgk/svm/smo.hpp"
#include "vgk/wl/kernel.hpp"

using namespace vgk;

namespace {

struct Criterion {
  int id;
  const char* name;
  bool (*run)(std::string& detail);
};

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string g_cli_path;

// 1: histogram kernel == naive per-iteration double sum, exactly
bool kernel_oracle_equivalence(std::string& detail) {
  const double start = now_seconds();
  std::mt19937_64 rng(20240601);
  const NeighborSelector selectors[] = {{EdgeType::CF},
                                        {EdgeType::CD},
                                        {EdgeType::DD},
                                        {EdgeType::SD},
                                        {EdgeType::CD, EdgeType::DD},
                                        NeighborSelector::all()};
  int checked = 0;
  for (int it = 0; it < 110; ++it) {
    const VerificationGraph g1 = testing::random_graph(rng, 50);
    const VerificationGraph g2 = testing::random_graph(rng, 50);
    const NeighborSelector sel = selectors[it % 6];
    const int d = static_cast<int>(rng() % 5);
    const int m = static_cast<int>(rng() % 4);
    CompressionTable z;
    const double got = wl_kernel(g1, g2, KernelConfig(sel, d, m), z);
    const long long want = testing::naive_wl_kernel(g1, g2, sel, d, m);
    if (got != static_cast<double>(want)) {
      detail = "mismatch at pair " + std::to_string(it) + ": got " +
               std::to_string(got) + ", oracle " + std::to_string(want);
      return false;
    }
    ++checked;
  }
  const double elapsed = now_seconds() - start;
  detail = std::to_string(checked) + " pairs, " + std::to_string(elapsed) + "s";
  return elapsed < 10.0;
}

// 2: empirical PSD for the kernel variants and their combination
bool psd_check(std::string& detail) {
  const double start = now_seconds();
  std::mt19937_64 rng(7777);
  std::vector<VerificationGraph> graphs;
  std::vector<const VerificationGraph*> ptrs;
  std::vector<std::string> names;
  for (int i = 0; i < 30; ++i) graphs.push_back(testing::random_graph(rng, 40));
  for (int i = 0; i < 30; ++i) {
    ptrs.push_back(&graphs[i]);
    names.push_back("g" + std::to_string(i));
  }
  const std::vector<std::pair<std::string, NeighborSelector>> variants = {
      {"CF", {EdgeType::CF}},
      {"CD", {EdgeType::CD}},
      {"DD", {EdgeType::DD}},
      {"CD,DD", {EdgeType::CD, EdgeType::DD}},
      {"CF,CD,DD", {EdgeType::CF, EdgeType::CD, EdgeType::DD}}};
  std::vector<GramMatrix> singles;
  for (const auto& [label, sel] : variants) {
    CompressionTable z;
    const GramMatrix m = gram(ptrs, names, KernelConfig(sel, 4, 2), z);
    const auto [lo, hi] = symmetric_eigen_range(m.values);
    if (lo < -1e-6 * std::max(std::abs(hi), 1.0)) {
      detail = "selector {" + label + "}: min eigenvalue " + std::to_string(lo);
      return false;
    }
    if (label == "CF" || label == "CD" || label == "DD") singles.push_back(m);
  }
  const double w = 1.0 / 3.0;
  const GramMatrix lin =
      combine({{w, &singles[0]}, {w, &singles[1]}, {w, &singles[2]}});
  const auto [lo, hi] = symmetric_eigen_range(lin.values);
  if (lo < -1e-6 * std::max(std::abs(hi), 1.0)) {
    detail = "1/3-combination: min eigenvalue " + std::to_string(lo);
    return false;
  }
  const double elapsed = now_seconds() - start;
  detail = "6 variants over 30 graphs, " + std::to_string(elapsed) + "s";
  return elapsed < 30.0;
}

// 3: SMO vs exhaustive box-QP oracle; separable fixtures train error-free
bool svm_correctness(std::string& detail) {
  std::mt19937_64 rng(991);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int done = 0;
  while (done < 50) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (auto& row : a) {
      for (double& v : row) v = gauss(rng);
    }
    GramMatrix g;
    g.config_fingerprint = "acceptance";
    g.values.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
      g.tasks.push_back("x" + std::to_string(i));
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) g.values[i][j] += a[i][k] * a[j][k];
      }
    }
    std::vector<int> ys(n);
    bool pos = false, neg = false;
    for (int i = 0; i < n; ++i) {
      ys[i] = rng() % 2 == 0 ? 1 : -1;
      (ys[i] > 0 ? pos : neg) = true;
    }
    if (!pos || !neg) continue;
    const double cs[] = {0.1, 1.0, 10.0};
    const double c = cs[rng() % 3];
    BinaryDataset data;
    for (int i = 0; i < n; ++i) data.indices.push_back(i);
    data.labels = ys;
    const PairwiseModel m = train(g, data, c, 1e-5);
    const double dual = dual_objective(m, g);
    const double oracle = testing::qp_oracle_max(g.values, ys, c);
    if (std::abs(dual - oracle) > 1e-4) {
      detail = "dual " + std::to_string(dual) + " vs oracle " + std::to_string(oracle);
      return false;
    }
    ++done;
  }

  // separable fixture: zero training errors
  GramMatrix g;
  g.config_fingerprint = "acceptance";
  std::vector<double> xs;
  std::vector<int> ys;
  for (int i = 0; i < 10; ++i) {
    xs.push_back(1.0 + 0.1 * i);
    ys.push_back(1);
    xs.push_back(-1.0 - 0.1 * i);
    ys.push_back(-1);
  }
  const int n = static_cast<int>(xs.size());
  g.values.assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    g.tasks.push_back("p" + std::to_string(i));
    for (int j = 0; j < n; ++j) g.values[i][j] = xs[i] * xs[j];
  }
  BinaryDataset data;
  for (int i = 0; i < n; ++i) data.indices.push_back(i);
  data.labels = ys;
  const PairwiseModel m = train(g, data, 1.0);
  for (int i = 0; i < n; ++i) {
    if (ys[i] * m.decision(g.values[i]) <= 0.0) {
      detail = "training error on separable fixture at instance " + std::to_string(i);
      return false;
    }
  }
  detail = "50 random duals within 1e-4 of the oracle; separable fixture clean";
  return true;
}

// 4: Spearman formula identities
bool spearman_formula(std::string& detail) {
  for (int k = 2; k <= 8; ++k) {
    std::vector<int> pos(k);
    for (int i = 0; i < k; ++i) pos[i] = i + 1;
    const Ranking p(pos);
    if (spearman(p, p) != 1.0) {
      detail = "identity at K=" + std::to_string(k);
      return false;
    }
    if (spearman(p, p.reversed()) != -1.0) {
      detail = "reversal at K=" + std::to_string(k);
      return false;
    }
  }
  if (spearman(Ranking({1, 2, 3}), Ranking({2, 1, 3})) != 0.5) {
    detail = "K=3 adjacent swap must be exactly 0.5";
    return false;
  }
  detail = "identity, reversal (K=2..8) and the K=3 worked example";
  return true;
}

// 5: mean-rank consensus attains the exhaustive optimum
bool default_predictor_optimality(std::string& detail) {
  std::mt19937_64 rng(31337);
  for (int it = 0; it < 100; ++it) {
    const int k = 2 + static_cast<int>(rng() % 4);
    const int n = 1 + static_cast<int>(rng() % 9);
    std::vector<Ranking> data;
    for (int i = 0; i < n; ++i) {
      std::vector<int> pos(k);
      for (int j = 0; j < k; ++j) pos[j] = j + 1;
      for (int j = k - 1; j > 0; --j) std::swap(pos[j], pos[rng() % (j + 1)]);
      data.push_back(Ranking(pos));
    }
    const double got = testing::total_spearman(default_predictor(data), data);
    const double best = testing::best_total_spearman(data);
    if (got < best - 1e-12) {
      detail = "multiset " + std::to_string(it) + ": consensus " + std::to_string(got) +
               " < optimum " + std::to_string(best);
      return false;
    }
  }
  detail = "100 random multisets, K <= 5";
  return true;
}

// 6: sum of voting scores is K(K-1)/2 on every prediction
bool voting_mass(std::string& detail) {
  const Dataset ds = testing::synthetic_dataset(40, 606);
  KernelEngine engine = KernelEngine::single(KernelConfig({EdgeType::CF}, 5, 2));
  const GramMatrix g = engine.compute_gram(ds.graph_pointers(), ds.task_ids);
  const RpcEnsemble ens = rpc_train(g, ds.rankings, ds.tools, 1.0);
  const double want = ds.tools.size() * (ds.tools.size() - 1) / 2.0;
  for (int i = 0; i < ds.size(); ++i) {
    const RpcPrediction pred = rpc_predict(ens, g.values[i]);
    double total = 0.0;
    for (double s : pred.scores) total += s;
    if (std::abs(total - want) > 1e-9) {
      detail = "instance " + std::to_string(i) + ": score mass " + std::to_string(total);
      return false;
    }
  }
  detail = "40 predictions, mass K(K-1)/2 within 1e-9";
  return true;
}

// 7: synthetic end-to-end experiment
bool end_to_end(std::string& detail) {
  const double start = now_seconds();
  const Dataset ds = testing::synthetic_dataset(200, 4242);
  ExperimentConfig cfg;
  cfg.kernel = {{1.0, KernelConfig({EdgeType::CF}, 5, 2)}};
  cfg.C = 1.0;
  cfg.folds = 10;
  cfg.seed = 1;
  const CvRun run = cross_validate(ds, cfg, cfg.seed);
  const double elapsed = now_seconds() - start;
  detail = "rpc " + std::to_string(run.mean) + ", default " +
           std::to_string(run.default_mean) + ", " + std::to_string(elapsed) + "s";
  return run.mean >= 0.9 && run.default_mean <= 0.3 && elapsed < 300.0;
}

// 8: p_sum graph matches the hand-written expectation
bool frontend_fidelity(std::string& detail) {
  const std::string src = testing::read_text(std::string(VGK_FIXTURE_DIR) + "/p_sum.c");
  const VerificationGraph g = frontend::extract_graph(src);
  const VerificationGraph expected =
      load_graph_file(std::string(VGK_FIXTURE_DIR) + "/p_sum.graph.json");
  if (save_graph(g) != save_graph(expected)) {
    detail = "graph differs from fixtures/p_sum.graph.json";
    return false;
  }
  int roots = 0;
  for (const GraphNode& n : g.nodes())
    if (n.depth == 0) ++roots;
  auto has = [&](NodeId s, NodeId d, EdgeType t, bool cond) {
    for (const GraphEdge& e : g.edges()) {
      if (e.src == s && e.dst == d && e.type == t && e.cond == cond) return true;
    }
    return false;
  };
  // roots: 12 = loop head, 16/21 = body, 3 = input assignment, 26 = assert
  const bool ok = roots == 10 && has(21, 12, EdgeType::CF, true) &&
                  has(12, 16, EdgeType::CD, true) && has(12, 21, EdgeType::CD, true) &&
                  has(3, 12, EdgeType::DD, true);
  if (!ok) {
    detail = "structural probes failed (roots=" + std::to_string(roots) + ")";
    return false;
  }
  detail = "10 statement roots, CF back edge, CD(T) into the body, DD input->loop";
  return true;
}

// 9: the cv subcommand is byte-deterministic
bool cli_determinism(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "cli path not provided";
    return false;
  }
  testing::TempDir tmp("vgk-acceptance");
  const Dataset ds = testing::synthetic_dataset(40, 11);
  const std::string graphs_dir = (tmp.path / "graphs").string();
  std::filesystem::create_directories(graphs_dir);
  nlohmann::json tasks = nlohmann::json::array();
  for (int i = 0; i < ds.size(); ++i) {
    const std::string file = graphs_dir + "/" + ds.task_ids[i] + ".json";
    save_graph_file(ds.graphs[i], file);
    tasks.push_back({{"id", ds.task_ids[i]},
                     {"graph", file},
                     {"ranking", ds.rankings[i].positions()}});
  }
  const nlohmann::json manifest = {{"tools", ds.tools.names}, {"tasks", tasks}};
  testing::write_text(tmp.file("manifest.json"), manifest.dump(2));
  const std::string base = g_cli_path + " cv --dataset " + tmp.file("manifest.json") +
                           " --edges CF --depth 5 --iters 2 --C 1 --folds 10 --seed 7 -o ";
  if (std::system((base + tmp.file("r1.json") + " > /dev/null 2>&1").c_str()) != 0) {
    detail = "first cv run failed";
    return false;
  }
  if (std::system((base + tmp.file("r2.json") + " > /dev/null 2>&1").c_str()) != 0) {
    detail = "second cv run failed";
    return false;
  }
  const std::string r1 = testing::read_text(tmp.file("r1.json"));
  const std::string r2 = testing::read_text(tmp.file("r2.json"));
  if (r1.empty() || r1 != r2) {
    detail = "reports differ between identical runs";
    return false;
  }
  detail = "two cv runs, byte-identical report (" + std::to_string(r1.size()) + " bytes)";
  return true;
}

const Criterion kCriteria[] = {
    {1, "kernel-oracle-equivalence", kernel_oracle_equivalence},
    {2, "gram-psd", psd_check},
    {3, "svm-correctness", svm_correctness},
    {4, "spearman-formula", spearman_formula},
    {5, "default-predictor-optimality", default_predictor_optimality},
    {6, "voting-mass-conservation", voting_mass},
    {7, "synthetic-end-to-end", end_to_end},
    {8, "frontend-fidelity", frontend_fidelity},
    {9, "cv-determinism", cli_determinism},
};

} // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("%s  %d  %-32s %s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                detail.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}

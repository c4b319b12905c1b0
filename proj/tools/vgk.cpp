// Command-line driver: graph extraction, Gram computation, RPC training,
// prediction and cross-validated experiments.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "vgk/data/dataset.hpp"
#include "vgk/experiment/cv.hpp"
#include "vgk/frontend/builder.hpp"
#include "vgk/graph_io.hpp"
#include "vgk/ranking/rpc_io.hpp"
#include "vgk/wl/gram_io.hpp"

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw vgk::Error("cannot open file: " + path);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw vgk::Error("cannot write file: " + path);
  out << text;
}

struct DatasetArgs {
  std::string manifest;
  std::string graphs_dir;
  std::string outcomes;
  std::string schema_path;
  bool filter_tools = false;
  bool allow_insane_schema = false;
  std::string save_manifest;
};

void add_dataset_options(CLI::App* cmd, DatasetArgs& args) {
  auto* manifest = cmd->add_option("--dataset", args.manifest,
                                   "dataset manifest JSON (graphs + rankings)");
  auto* graphs = cmd->add_option("--graphs", args.graphs_dir,
                                 "directory of <task>.json graph files");
  auto* outcomes =
      cmd->add_option("--outcomes", args.outcomes, "outcomes CSV (task,tool,time_s,answer,expected)");
  auto* schema = cmd->add_option("--schema", args.schema_path, "scoring schema JSON");
  cmd->add_flag("--filter-tools", args.filter_tools,
                "drop tools with no correct outcome anywhere in the data");
  cmd->add_flag("--allow-insane-schema", args.allow_insane_schema,
                "accept a schema that fails the correct>=0>=incorrect sanity check");
  cmd->add_option("--save-manifest", args.save_manifest,
                  "also write the assembled dataset manifest here");
  manifest->excludes(graphs)->excludes(outcomes)->excludes(schema);
  graphs->needs(outcomes)->needs(schema);
}

vgk::Dataset load_dataset_args(const DatasetArgs& args) {
  if (!args.manifest.empty()) {
    vgk::Dataset ds = vgk::load_dataset_file(args.manifest);
    if (!args.save_manifest.empty()) vgk::save_dataset_file(ds, args.save_manifest);
    return ds;
  }
  if (args.graphs_dir.empty())
    throw vgk::Error("either --dataset or --graphs/--outcomes/--schema is required");
  const auto records = vgk::parse_outcomes_csv(read_file(args.outcomes));
  const auto schema = vgk::ScoringSchema::from_json(
      nlohmann::json::parse(read_file(args.schema_path)), args.allow_insane_schema);
  std::vector<std::string> warnings;
  vgk::Dataset ds =
      vgk::assemble_dataset(args.graphs_dir, records, schema, args.filter_tools, &warnings);
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
  if (!args.save_manifest.empty()) vgk::save_dataset_file(ds, args.save_manifest);
  return ds;
}

struct KernelArgs {
  std::vector<std::string> edges;
  std::vector<double> weights;
  int depth = 5;
  int iters = 2;
};

void add_kernel_options(CLI::App* cmd, KernelArgs& args) {
  cmd->add_option("--edges", args.edges,
                  "edge types for one kernel component, e.g. CF or CD,DD; repeat to combine")
      ->expected(-1);
  cmd->add_option("--weights", args.weights,
                  "weights for the kernel components (default: equal weights)");
  cmd->add_option("--depth", args.depth, "subtree depth bound d")->capture_default_str();
  cmd->add_option("--iters", args.iters, "refinement iterations m")->capture_default_str();
}

std::vector<vgk::KernelComponent> kernel_components(const KernelArgs& args) {
  std::vector<std::string> edges = args.edges;
  if (edges.empty()) edges.push_back("CF");
  std::vector<double> weights = args.weights;
  if (weights.empty()) weights.assign(edges.size(), 1.0 / static_cast<double>(edges.size()));
  if (edges.size() == 1 && args.weights.empty()) weights[0] = 1.0;
  if (weights.size() != edges.size())
    throw vgk::Error("--weights must match the number of --edges components");
  std::vector<vgk::KernelComponent> comps;
  for (size_t i = 0; i < edges.size(); ++i) {
    comps.push_back({weights[i], vgk::KernelConfig(vgk::NeighborSelector::parse(edges[i]),
                                                   args.depth, args.iters)});
  }
  return comps;
}

void print_prediction(const vgk::RpcPrediction& pred, const vgk::ToolSet& tools) {
  const int k = tools.size();
  std::printf("ranking (best first):\n");
  for (int r = 0; r < k; ++r) {
    const int tool = pred.ranking.order()[r];
    std::printf("  %2d. %-20s  score S=%.4f\n", r + 1, tools.names[tool].c_str(),
                pred.scores[tool]);
  }
  std::printf("pairwise preference probabilities M[i][j] = P(i before j):\n");
  std::printf("%22s", "");
  for (int j = 0; j < k; ++j) std::printf(" %10s", tools.names[j].substr(0, 10).c_str());
  std::printf("\n");
  for (int i = 0; i < k; ++i) {
    std::printf("  %-20s", tools.names[i].c_str());
    for (int j = 0; j < k; ++j) {
      if (i == j)
        std::printf(" %10s", "-");
      else
        std::printf(" %10.4f", pred.prob[i][j]);
    }
    std::printf("\n");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"verification-graph kernels and tool-ranking experiments"};
  app.require_subcommand(1);

  // extract
  auto* extract = app.add_subcommand("extract", "parse mini-C and write its verification graph");
  std::string extract_in, extract_out;
  extract->add_option("source", extract_in, "mini-C source file")->required();
  extract->add_option("-o,--output", extract_out, "output graph JSON")->required();
  extract->callback([&] {
    const vgk::VerificationGraph g = vgk::frontend::extract_graph(read_file(extract_in));
    vgk::save_graph_file(g, extract_out);
    std::printf("%s: %d nodes, %d edges -> %s\n", extract_in.c_str(), g.node_count(),
                g.edge_count(), extract_out.c_str());
  });

  // gram
  auto* gramc = app.add_subcommand("gram", "compute a Gram matrix over graphs");
  KernelArgs gram_kernel;
  DatasetArgs gram_data;
  std::vector<std::string> gram_files;
  std::string gram_out;
  add_kernel_options(gramc, gram_kernel);
  add_dataset_options(gramc, gram_data);
  gramc->add_option("graphs", gram_files, "graph JSON files (task ids = file stems)");
  gramc->add_option("-o,--output", gram_out, "output gram JSON")->required();
  gramc->callback([&] {
    std::vector<std::string> names;
    std::vector<vgk::VerificationGraph> storage;
    std::vector<const vgk::VerificationGraph*> graphs;
    if (!gram_files.empty()) {
      for (const std::string& f : gram_files) {
        storage.push_back(vgk::load_graph_file(f));
        names.push_back(fs::path(f).stem().string());
      }
      for (const auto& g : storage) graphs.push_back(&g);
    } else {
      const vgk::Dataset ds = load_dataset_args(gram_data);
      names = ds.task_ids;
      storage = ds.graphs;
      for (const auto& g : storage) graphs.push_back(&g);
    }
    vgk::KernelEngine engine(kernel_components(gram_kernel));
    const vgk::GramMatrix m = engine.compute_gram(graphs, names);
    vgk::save_gram_file(m, engine, gram_out);
    std::printf("gram %dx%d (%s) -> %s\n", m.size(), m.size(),
                m.config_fingerprint.c_str(), gram_out.c_str());
  });

  // train
  auto* trainc = app.add_subcommand("train", "train an RPC ensemble on a precomputed gram");
  DatasetArgs train_data;
  std::string train_gram, train_out;
  double train_c = 1.0;
  add_dataset_options(trainc, train_data);
  trainc->add_option("--gram", train_gram, "gram JSON produced by 'gram'")->required();
  trainc->add_option("--C", train_c, "soft-margin penalty")->capture_default_str();
  trainc->add_option("-o,--output", train_out, "output ensemble directory")->required();
  trainc->callback([&] {
    const vgk::Dataset ds = load_dataset_args(train_data);
    vgk::LoadedGram lg = vgk::load_gram_file(train_gram);
    if (lg.matrix.tasks != ds.task_ids)
      throw vgk::Error("gram task list does not match the dataset (order matters)");
    const vgk::RpcEnsemble ens = vgk::rpc_train(lg.matrix, ds.rankings, ds.tools, train_c);
    vgk::save_ensemble(ens, lg.engine, ds.task_ids, ds.graph_paths, train_out);
    std::printf("trained %zu pairwise models over %d tasks -> %s\n", ens.models.size(),
                ds.size(), train_out.c_str());
  });

  // predict
  auto* predictc = app.add_subcommand("predict", "predict a tool ranking for one graph");
  std::string predict_model, predict_graph, predict_out;
  predictc->add_option("--model", predict_model, "ensemble directory")->required();
  predictc->add_option("--graph", predict_graph, "graph JSON of the query task")->required();
  predictc->add_option("-o,--output", predict_out, "also write the prediction as JSON");
  predictc->callback([&] {
    const vgk::SavedEnsemble saved = vgk::load_ensemble(predict_model);
    std::vector<vgk::VerificationGraph> storage;
    std::vector<const vgk::VerificationGraph*> graphs;
    for (const std::string& p : saved.graph_paths) storage.push_back(vgk::load_graph_file(p));
    for (const auto& g : storage) graphs.push_back(&g);
    const vgk::VerificationGraph query = vgk::load_graph_file(predict_graph);
    const std::vector<double> row = saved.engine.compute_row(query, graphs);
    const vgk::RpcPrediction pred = vgk::rpc_predict(saved.ensemble, row);
    print_prediction(pred, saved.ensemble.tools);
    if (!predict_out.empty()) {
      nlohmann::json j = {{"tools", saved.ensemble.tools.names},
                          {"ranking", pred.ranking.positions()},
                          {"scores", pred.scores},
                          {"prob", pred.prob}};
      write_file(predict_out, j.dump(2) + "\n");
    }
  });

  // baseline
  auto* basec = app.add_subcommand("baseline", "default predictor: training-set consensus ranking");
  DatasetArgs base_data;
  add_dataset_options(basec, base_data);
  basec->callback([&] {
    const vgk::Dataset ds = load_dataset_args(base_data);
    const vgk::Ranking consensus = vgk::default_predictor(ds.rankings);
    double mean = 0.0;
    for (const vgk::Ranking& r : ds.rankings) mean += vgk::spearman(consensus, r);
    mean /= static_cast<double>(ds.size());
    std::printf("default ranking (best first):\n");
    for (int r = 0; r < ds.tools.size(); ++r)
      std::printf("  %2d. %s\n", r + 1, ds.tools.names[consensus.order()[r]].c_str());
    std::printf("mean training Spearman: %.6f\n", mean);
  });

  // cv
  auto* cvc = app.add_subcommand("cv", "k-fold cross-validated ranking experiment");
  DatasetArgs cv_data;
  KernelArgs cv_kernel;
  std::string cv_out, cv_timings_out;
  double cv_c = 1.0;
  int cv_folds = 10;
  std::uint64_t cv_seed = 0;
  int cv_repeats = 1;
  add_dataset_options(cvc, cv_data);
  add_kernel_options(cvc, cv_kernel);
  cvc->add_option("--C", cv_c, "soft-margin penalty")->capture_default_str();
  cvc->add_option("--folds", cv_folds, "fold count k")->capture_default_str();
  cvc->add_option("--seed", cv_seed, "shuffle seed")->capture_default_str();
  cvc->add_option("--repeats", cv_repeats, "repeated CV runs with derived seeds")
      ->capture_default_str();
  cvc->add_option("-o,--output", cv_out, "canonical report JSON (no timings)");
  cvc->add_option("--timings-out", cv_timings_out, "report JSON including wall-clock timings");
  cvc->callback([&] {
    const vgk::Dataset ds = load_dataset_args(cv_data);
    vgk::ExperimentConfig cfg;
    cfg.kernel = kernel_components(cv_kernel);
    cfg.C = cv_c;
    cfg.folds = cv_folds;
    cfg.seed = cv_seed;
    cfg.repeats = cv_repeats;
    const vgk::CvReport report = vgk::run_experiment(ds, cfg);
    for (const vgk::CvRun& run : report.runs) {
      std::printf("seed %llu  (gram %.2fs)\n",
                  static_cast<unsigned long long>(run.seed), run.gram_seconds);
      std::printf("  fold  size  spearman  default   train[s]  test[s]\n");
      for (const vgk::FoldResult& f : run.folds) {
        std::printf("  %4d  %4d  %8.4f  %7.4f  %9.3f  %7.3f\n", f.fold, f.test_size,
                    f.spearman, f.default_spearman, f.train_seconds, f.test_seconds);
      }
      std::printf("  mean %.4f +- %.4f   default %.4f +- %.4f\n", run.mean, run.stddev,
                  run.default_mean, run.default_stddev);
    }
    std::printf("overall: %.4f +- %.4f   default: %.4f +- %.4f   (%s)\n", report.mean,
                report.stddev, report.default_mean, report.default_stddev,
                report.kernel_fingerprint.c_str());
    if (!cv_out.empty()) write_file(cv_out, vgk::report_to_json(report, false).dump(2) + "\n");
    if (!cv_timings_out.empty())
      write_file(cv_timings_out, vgk::report_to_json(report, true).dump(2) + "\n");
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const vgk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "vgk/ranking/rpc.hpp"
#include "vgk/svm/model_io.hpp"
#include "vgk/wl/gram_io.hpp"

namespace vgk {

// An ensemble is persisted as a directory: ensemble.json (tool order, C,
// kernel config + compression tables, training task list) plus one model
// file per tool pair.
struct SavedEnsemble {
  RpcEnsemble ensemble;
  KernelEngine engine;
  std::vector<std::string> task_ids;
  std::vector<std::string> graph_paths;
};

inline std::string pair_model_filename(int i, int j) {
  return "pair_" + std::to_string(i) + "_" + std::to_string(j) + ".json";
}

inline void save_ensemble(const RpcEnsemble& ens, const KernelEngine& engine,
                          const std::vector<std::string>& task_ids,
                          const std::vector<std::string>& graph_paths,
                          const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json tasks = nlohmann::json::array();
  for (size_t i = 0; i < task_ids.size(); ++i)
    tasks.push_back({{"id", task_ids[i]}, {"graph", graph_paths.at(i)}});
  nlohmann::json tables = nlohmann::json::array();
  for (const CompressionTable& t : engine.tables()) tables.push_back(t.to_json());
  const nlohmann::json j = {{"tools", ens.tools.names},
                            {"C", ens.C},
                            {"kernel", kernel_engine_config_json(engine)},
                            {"compression", tables},
                            {"tasks", tasks}};
  std::ofstream out(fs::path(dir) / "ensemble.json");
  if (!out) throw Error("cannot write ensemble manifest in " + dir);
  out << j.dump(2) << "\n";
  const int k = ens.tools.size();
  for (int i = 0; i < k; ++i) {
    for (int jdx = i + 1; jdx < k; ++jdx) {
      std::ofstream mf(fs::path(dir) / pair_model_filename(i, jdx));
      if (!mf) throw Error("cannot write model file in " + dir);
      mf << model_to_json(ens.model(i, jdx)).dump(2) << "\n";
    }
  }
}

inline SavedEnsemble load_ensemble(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream in(fs::path(dir) / "ensemble.json");
  if (!in) throw Error("cannot open ensemble manifest in " + dir);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(dir + ": invalid ensemble JSON: " + e.what());
  }
  ToolSet tools(j.at("tools").get<std::vector<std::string>>());
  KernelEngine engine = kernel_engine_from_config_json(j.at("kernel"));
  std::vector<CompressionTable> tables;
  for (const auto& jt : j.at("compression"))
    tables.push_back(CompressionTable::from_json(jt));
  engine.set_tables(std::move(tables));

  RpcEnsemble ens{tools, j.at("C").get<double>(), engine.fingerprint(), {}};
  const int k = tools.size();
  for (int i = 0; i < k; ++i) {
    for (int jdx = i + 1; jdx < k; ++jdx) {
      const fs::path p = fs::path(dir) / pair_model_filename(i, jdx);
      std::ifstream mf(p);
      if (!mf) throw Error("missing model file " + p.string());
      nlohmann::json mj;
      mf >> mj;
      ens.models.push_back(model_from_json(mj));
    }
  }

  SavedEnsemble out{std::move(ens), std::move(engine), {}, {}};
  for (const auto& jt : j.at("tasks")) {
    out.task_ids.push_back(jt.at("id").get<std::string>());
    std::string path = jt.at("graph").get<std::string>();
    if (fs::path(path).is_relative()) {
      const fs::path resolved = fs::path(dir) / path;
      if (fs::exists(resolved)) path = resolved.string();
    }
    out.graph_paths.push_back(path);
  }
  return out;
}

} // namespace vgk

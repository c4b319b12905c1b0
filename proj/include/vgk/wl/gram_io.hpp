#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

#include "vgk/wl/engine.hpp"

namespace vgk {

// Gram file: {"tasks":[...], "config":{...}, "matrix":[[...],...],
// "compression":[...]}. The compression tables let later runs extend the
// kernel to new instances consistently.

inline nlohmann::json kernel_engine_config_json(const KernelEngine& engine) {
  nlohmann::json comps = nlohmann::json::array();
  for (const KernelComponent& c : engine.components()) {
    comps.push_back({{"weight", c.weight},
                     {"edges", c.config.selector.to_string()},
                     {"depth", c.config.depth},
                     {"iters", c.config.iterations}});
  }
  return {{"components", comps}, {"fingerprint", engine.fingerprint()}};
}

inline KernelEngine kernel_engine_from_config_json(const nlohmann::json& j) {
  std::vector<KernelComponent> comps;
  for (const auto& jc : j.at("components")) {
    comps.push_back(
        {jc.at("weight").get<double>(),
         KernelConfig(NeighborSelector::parse(jc.at("edges").get<std::string>()),
                      jc.at("depth").get<int>(), jc.at("iters").get<int>())});
  }
  return KernelEngine(std::move(comps));
}

inline nlohmann::json gram_to_json(const GramMatrix& m, const KernelEngine& engine) {
  nlohmann::json j;
  j["tasks"] = m.tasks;
  j["config"] = kernel_engine_config_json(engine);
  j["matrix"] = m.values;
  nlohmann::json tables = nlohmann::json::array();
  for (const CompressionTable& t : engine.tables()) tables.push_back(t.to_json());
  j["compression"] = tables;
  return j;
}

struct LoadedGram {
  GramMatrix matrix;
  KernelEngine engine;
};

inline LoadedGram gram_from_json(const nlohmann::json& j) {
  KernelEngine engine = kernel_engine_from_config_json(j.at("config"));
  std::vector<CompressionTable> tables;
  for (const auto& jt : j.at("compression")) tables.push_back(CompressionTable::from_json(jt));
  engine.set_tables(std::move(tables));
  GramMatrix m;
  m.tasks = j.at("tasks").get<std::vector<std::string>>();
  m.values = j.at("matrix").get<std::vector<std::vector<double>>>();
  m.config_fingerprint = engine.fingerprint();
  m.validate();
  return {std::move(m), std::move(engine)};
}

inline void save_gram_file(const GramMatrix& m, const KernelEngine& engine,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write gram file: " + path);
  out << gram_to_json(m, engine).dump(2) << "\n";
}

inline LoadedGram load_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open gram file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": invalid gram JSON: " + e.what());
  }
  try {
    return gram_from_json(j);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

} // namespace vgk

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vgk/data/outcomes.hpp"
#include "vgk/graph_io.hpp"

namespace vgk {

// Aligned task list: one graph and one ground-truth ranking per task, plus
// the tool order the rankings refer to. The learner's entire view of an
// experiment.
struct Dataset {
  ToolSet tools;
  std::vector<std::string> task_ids;
  std::vector<std::string> graph_paths;
  std::vector<VerificationGraph> graphs;
  std::vector<Ranking> rankings;

  int size() const { return static_cast<int>(task_ids.size()); }

  std::vector<const VerificationGraph*> graph_pointers() const {
    std::vector<const VerificationGraph*> out;
    out.reserve(graphs.size());
    for (const VerificationGraph& g : graphs) out.push_back(&g);
    return out;
  }
};

// Derives per-task rankings from raw outcomes. Tasks are ordered by id;
// each task's graph is <graphs_dir>/<task>.json. With `filter_tools` on,
// tools without a single correct outcome anywhere in the data are dropped
// before ranking.
inline Dataset assemble_dataset(const std::string& graphs_dir,
                                const std::vector<TaskOutcome>& outcomes,
                                const ScoringSchema& schema, bool filter_tools,
                                std::vector<std::string>* warnings = nullptr) {
  namespace fs = std::filesystem;
  if (outcomes.empty()) throw Error("assemble_dataset: no outcome records");

  std::map<std::string, std::vector<TaskOutcome>> by_task;
  std::map<std::string, bool> tool_correct;
  for (const TaskOutcome& o : outcomes) {
    by_task[o.task].push_back(o);
    tool_correct[o.tool] = tool_correct[o.tool] || outcome_correct(o);
  }

  std::vector<std::string> tool_names;
  for (const auto& [tool, correct] : tool_correct) {
    if (filter_tools && !correct) {
      if (warnings)
        warnings->push_back("tool '" + tool + "' excluded: no correct outcome");
      continue;
    }
    tool_names.push_back(tool);
  }
  if (tool_names.size() < 2)
    throw Error("assemble_dataset: fewer than two tools remain after filtering");
  ToolSet tools(tool_names); // map iteration is ascending, so order is lexicographic

  // graphs and outcomes must match one-to-one
  std::vector<std::string> problems;
  std::map<std::string, std::string> graph_of;
  for (const auto& [task, unit] : by_task) {
    const fs::path p = fs::path(graphs_dir) / (task + ".json");
    if (!fs::exists(p))
      problems.push_back("task '" + task + "' has outcomes but no graph file " + p.string());
    else
      graph_of[task] = p.string();
  }
  if (fs::is_directory(graphs_dir)) {
    for (const auto& entry : fs::directory_iterator(graphs_dir)) {
      if (entry.path().extension() != ".json") continue;
      const std::string task = entry.path().stem().string();
      if (!by_task.count(task))
        problems.push_back("graph file " + entry.path().string() + " has no outcomes");
    }
  } else {
    throw Error("assemble_dataset: graphs dir does not exist: " + graphs_dir);
  }
  if (!problems.empty()) {
    std::string msg = "assemble_dataset: graph/outcome mismatch:";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw Error(msg);
  }

  Dataset ds{tools, {}, {}, {}, {}};
  for (const auto& [task, unit] : by_task) {
    std::vector<TaskOutcome> filtered;
    for (const TaskOutcome& o : unit) {
      bool keep = false;
      for (const std::string& n : tools.names) {
        if (n == o.tool) {
          keep = true;
          break;
        }
      }
      if (keep) filtered.push_back(o);
    }
    ds.task_ids.push_back(task);
    ds.graph_paths.push_back(graph_of.at(task));
    ds.graphs.push_back(load_graph_file(graph_of.at(task)));
    ds.rankings.push_back(rank_tools(filtered, tools, schema, warnings));
  }
  return ds;
}

// Manifest file linking graphs to rankings:
//   {"tools":[...], "tasks":[{"id":..,"graph":..,"ranking":[..]},...]}
inline nlohmann::json dataset_to_json(const Dataset& ds) {
  nlohmann::json tasks = nlohmann::json::array();
  for (int i = 0; i < ds.size(); ++i) {
    tasks.push_back({{"id", ds.task_ids[i]},
                     {"graph", ds.graph_paths[i]},
                     {"ranking", ds.rankings[i].positions()}});
  }
  return {{"tools", ds.tools.names}, {"tasks", tasks}};
}

inline Dataset dataset_from_json(const nlohmann::json& j,
                                 const std::string& base_dir = "") {
  namespace fs = std::filesystem;
  ToolSet tools(j.at("tools").get<std::vector<std::string>>());
  Dataset ds{tools, {}, {}, {}, {}};
  for (const auto& jt : j.at("tasks")) {
    ds.task_ids.push_back(jt.at("id").get<std::string>());
    std::string path = jt.at("graph").get<std::string>();
    if (!base_dir.empty() && fs::path(path).is_relative())
      path = (fs::path(base_dir) / path).string();
    ds.graph_paths.push_back(path);
    ds.graphs.push_back(load_graph_file(path));
    Ranking r(jt.at("ranking").get<std::vector<int>>());
    if (r.size() != tools.size())
      throw Error("manifest ranking for task '" + ds.task_ids.back() +
                  "' does not match the tool set");
    ds.rankings.push_back(std::move(r));
  }
  if (ds.task_ids.empty()) throw Error("manifest contains no tasks");
  return ds;
}

inline void save_dataset_file(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest: " + path);
  out << dataset_to_json(ds).dump(2) << "\n";
}

inline Dataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": invalid manifest JSON: " + e.what());
  }
  return dataset_from_json(j, std::filesystem::path(path).parent_path().string());
}

} // namespace vgk

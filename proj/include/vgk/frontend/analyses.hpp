#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vgk/frontend/cfg.hpp"

namespace vgk::frontend {

// Forward may-analysis fixpoint over the CFG: a definition d of v reaches a
// statement s iff some CFG path from d to s has no intervening redefinition
// of v. Definition sites are identified by statement index (each statement
// defines at most one variable).
class ReachingDefinitions {
public:
  explicit ReachingDefinitions(const Cfg& cfg) : in_(cfg.size()), out_(cfg.size()) {
    std::map<std::string, std::set<int>> defs_of;
    for (int s = 0; s < cfg.size(); ++s) {
      const auto& info = cfg.statement(s);
      if (!info.def.empty()) defs_of[info.def].insert(s);
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < cfg.size(); ++s) {
        std::set<int> in;
        for (int p : cfg.predecessors(s)) in.insert(out_[p].begin(), out_[p].end());
        std::set<int> out = transfer(cfg, s, in, defs_of);
        if (in != in_[s] || out != out_[s]) {
          in_[s] = std::move(in);
          out_[s] = std::move(out);
          changed = true;
        }
      }
    }
    for (int s = 0; s < cfg.size(); ++s) {
      for (int d : in_[s]) reaching_[s][cfg.statement(d).def].insert(d);
    }
  }

  // Definitions of `var` reaching the entry of statement `s`.
  const std::set<int>& at(int s, const std::string& var) const {
    static const std::set<int> empty;
    auto row = reaching_.find(s);
    if (row == reaching_.end()) return empty;
    auto cell = row->second.find(var);
    return cell == row->second.end() ? empty : cell->second;
  }

  const std::set<int>& in(int s) const { return in_.at(s); }
  const std::set<int>& out(int s) const { return out_.at(s); }

  // One extra transfer application changes nothing at a fixpoint.
  bool is_fixpoint(const Cfg& cfg) const {
    std::map<std::string, std::set<int>> defs_of;
    for (int s = 0; s < cfg.size(); ++s) {
      const auto& info = cfg.statement(s);
      if (!info.def.empty()) defs_of[info.def].insert(s);
    }
    for (int s = 0; s < cfg.size(); ++s) {
      std::set<int> in;
      for (int p : cfg.predecessors(s)) in.insert(out_[p].begin(), out_[p].end());
      if (in != in_[s]) return false;
      if (transfer(cfg, s, in, defs_of) != out_[s]) return false;
    }
    return true;
  }

private:
  static std::set<int> transfer(const Cfg& cfg, int s, const std::set<int>& in,
                                const std::map<std::string, std::set<int>>& defs_of) {
    std::set<int> out = in;
    const auto& info = cfg.statement(s);
    if (!info.def.empty()) {
      for (int d : defs_of.at(info.def)) out.erase(d);
      out.insert(s);
    }
    return out;
  }

  std::vector<std::set<int>> in_, out_;
  std::map<int, std::map<std::string, std::set<int>>> reaching_;
};

inline ReachingDefinitions reaching_definitions(const Cfg& cfg) {
  return ReachingDefinitions(cfg);
}

struct ControlDependence {
  int controller; // statement index of the while/if
  int dependent;  // statement index
  bool valuation; // branch under which the dependent executes
};

// Syntax-directed control dependence for the structured subset: each
// statement depends on its nearest enclosing while/if condition with the
// valuation selecting its branch. Equivalent to the post-dominator
// construction on these programs.
inline std::vector<ControlDependence> control_dependencies(const Cfg& cfg) {
  std::vector<ControlDependence> deps;
  for (int s = 0; s < cfg.size(); ++s) {
    const auto& info = cfg.statement(s);
    if (info.controller >= 0)
      deps.push_back({info.controller, s, info.controller_branch});
  }
  return deps;
}

} // namespace vgk::frontend

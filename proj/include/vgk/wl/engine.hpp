#pragma once

#include <string>
#include <vector>

#include "vgk/wl/kernel.hpp"

namespace vgk {

struct KernelComponent {
  double weight;
  KernelConfig config;
};

// A weighted linear combination of WL kernels (a single kernel is the
// one-component case) together with the compression tables accumulated while
// computing a Gram matrix. Rows for new instances reuse those tables.
class KernelEngine {
public:
  explicit KernelEngine(std::vector<KernelComponent> components)
      : components_(std::move(components)) {
    if (components_.empty()) throw Error("kernel engine needs at least one component");
    for (const auto& c : components_) {
      if (c.weight <= 0) throw Error("kernel component weights must be positive");
    }
    tables_.assign(components_.size(), CompressionTable());
  }

  static KernelEngine single(KernelConfig cfg) {
    return KernelEngine({KernelComponent{1.0, cfg}});
  }

  const std::vector<KernelComponent>& components() const { return components_; }
  const std::vector<CompressionTable>& tables() const { return tables_; }

  void set_tables(std::vector<CompressionTable> tables) {
    if (tables.size() != components_.size())
      throw Error("compression table count does not match kernel components");
    tables_ = std::move(tables);
  }

  std::string fingerprint() const {
    if (components_.size() == 1 && components_[0].weight == 1.0)
      return components_[0].config.fingerprint();
    std::string fp = "lin(";
    for (size_t i = 0; i < components_.size(); ++i) {
      if (i) fp += "+";
      fp += std::to_string(components_[i].weight) + "*" +
            components_[i].config.fingerprint();
    }
    return fp + ")";
  }

  GramMatrix compute_gram(const std::vector<const VerificationGraph*>& graphs,
                          const std::vector<std::string>& task_names) {
    std::vector<GramMatrix> parts;
    parts.reserve(components_.size());
    for (size_t c = 0; c < components_.size(); ++c)
      parts.push_back(gram(graphs, task_names, components_[c].config, tables_[c]));
    if (components_.size() == 1 && components_[0].weight == 1.0) return parts[0];
    std::vector<std::pair<double, const GramMatrix*>> weighted;
    for (size_t c = 0; c < components_.size(); ++c)
      weighted.emplace_back(components_[c].weight, &parts[c]);
    GramMatrix combined = combine(weighted);
    combined.config_fingerprint = fingerprint();
    return combined;
  }

  std::vector<double> compute_row(const VerificationGraph& query,
                                  const std::vector<const VerificationGraph*>& graphs) const {
    std::vector<double> row(graphs.size(), 0.0);
    for (size_t c = 0; c < components_.size(); ++c) {
      const std::vector<double> part =
          kernel_row(query, graphs, components_[c].config, tables_[c]);
      const double w = components_.size() == 1 && components_[0].weight == 1.0
                           ? 1.0
                           : components_[c].weight;
      for (size_t i = 0; i < row.size(); ++i) row[i] += w * part[i];
    }
    return row;
  }

private:
  std::vector<KernelComponent> components_;
  std::vector<CompressionTable> tables_;
};

} // namespace vgk

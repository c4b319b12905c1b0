#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "vgk/gram.hpp"
#include "vgk/graph.hpp"
#include "vgk/wl/compression.hpp"

namespace vgk {

struct KernelConfig {
  NeighborSelector selector;
  int depth = 5;      // nodes deeper than this are ignored by the Dirac sum
  int iterations = 2; // refinement rounds; round 0 (original labels) also counts

  KernelConfig(NeighborSelector sel, int d, int m)
      : selector(sel), depth(d), iterations(m) {
    if (d < 0 || m < 0) throw Error("kernel depth and iterations must be >= 0");
  }

  std::string fingerprint() const {
    return "wl(edges=" + selector.to_string() + ",d=" + std::to_string(depth) +
           ",m=" + std::to_string(iterations) + ")";
  }
};

inline std::vector<int> initial_labels(const VerificationGraph& g, CompressionTable& z) {
  std::vector<int> labels;
  labels.reserve(g.node_count());
  for (const GraphNode& n : g.nodes()) labels.push_back(z.id_of(std::string(label_name(n.label))));
  return labels;
}

// One synchronous refinement round: every node's new label compresses its old
// label followed by the ascending-sorted compressed (target-label, edge-type,
// edge-cond) triples of its selected outgoing edges. All triples read the
// pre-round labeling.
inline std::vector<int> relabel_step(const VerificationGraph& g,
                                     const std::vector<int>& labels,
                                     const NeighborSelector& sel, CompressionTable& z) {
  std::vector<int> next(labels.size());
  std::vector<int> aug;
  for (NodeId n = 0; n < g.node_count(); ++n) {
    aug.clear();
    for (EdgeId eid : g.out_edges(n)) {
      const GraphEdge& e = g.edge(eid);
      if (!sel.contains(e.type)) continue;
      std::string triple = std::to_string(labels[e.dst]);
      triple += ',';
      triple += edge_type_name(e.type);
      triple += ',';
      triple += e.cond ? 'T' : 'F';
      aug.push_back(z.id_of(triple));
    }
    std::sort(aug.begin(), aug.end());
    std::string str = std::to_string(labels[n]);
    str += ';';
    for (size_t k = 0; k < aug.size(); ++k) {
      if (k) str += ',';
      str += std::to_string(aug[k]);
    }
    next[n] = z.id_of(str);
  }
  return next;
}

namespace detail {

using LabelHistogram = std::unordered_map<int, std::int64_t>;

inline LabelHistogram depth_histogram(const VerificationGraph& g,
                                      const std::vector<int>& labels, int depth_bound) {
  LabelHistogram h;
  for (const GraphNode& n : g.nodes()) {
    if (n.depth <= depth_bound) ++h[labels[n.id]];
  }
  return h;
}

inline std::int64_t histogram_product(const LabelHistogram& a, const LabelHistogram& b) {
  const LabelHistogram& small = a.size() <= b.size() ? a : b;
  const LabelHistogram& large = a.size() <= b.size() ? b : a;
  std::int64_t sum = 0;
  for (const auto& [label, count] : small) {
    auto it = large.find(label);
    if (it != large.end()) sum += count * it->second;
  }
  return sum;
}

} // namespace detail

// k^{(d,m)}(g1,g2): per refinement round, the number of (n, n') pairs with
// equal labels and both depths <= d, summed over rounds 0..m. Computed as a
// label-histogram inner product per round.
inline double wl_kernel(const VerificationGraph& g1, const VerificationGraph& g2,
                        const KernelConfig& cfg, CompressionTable& z) {
  std::vector<int> l1 = initial_labels(g1, z);
  std::vector<int> l2 = initial_labels(g2, z);
  std::int64_t total = 0;
  for (int round = 0;; ++round) {
    total += detail::histogram_product(detail::depth_histogram(g1, l1, cfg.depth),
                                       detail::depth_histogram(g2, l2, cfg.depth));
    if (round == cfg.iterations) break;
    l1 = relabel_step(g1, l1, cfg.selector, z);
    l2 = relabel_step(g2, l2, cfg.selector, z);
  }
  return static_cast<double>(total);
}

// Gram matrix over an ordered task list, one shared compression table. All
// graphs are refined in lockstep; each round contributes the pairwise
// histogram products of the upper triangle.
inline GramMatrix gram(const std::vector<const VerificationGraph*>& graphs,
                       const std::vector<std::string>& task_names,
                       const KernelConfig& cfg, CompressionTable& z) {
  if (graphs.empty()) throw Error("gram computation needs at least one graph");
  if (graphs.size() != task_names.size())
    throw Error("task name list does not match graph list");
  const int n = static_cast<int>(graphs.size());
  std::vector<std::vector<int>> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = initial_labels(*graphs[i], z);
  std::vector<std::vector<std::int64_t>> acc(n, std::vector<std::int64_t>(n, 0));
  for (int round = 0;; ++round) {
    std::vector<detail::LabelHistogram> hists(n);
    for (int i = 0; i < n; ++i)
      hists[i] = detail::depth_histogram(*graphs[i], labels[i], cfg.depth);
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) acc[i][j] += detail::histogram_product(hists[i], hists[j]);
    }
    if (round == cfg.iterations) break;
    for (int i = 0; i < n; ++i)
      labels[i] = relabel_step(*graphs[i], labels[i], cfg.selector, z);
  }
  GramMatrix g;
  g.tasks = task_names;
  g.config_fingerprint = cfg.fingerprint();
  g.values.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      g.values[i][j] = static_cast<double>(acc[i][j]);
      g.values[j][i] = g.values[i][j];
    }
  }
  return g;
}

// Entrywise weighted sum; a conic combination of kernels is again a kernel.
inline GramMatrix combine(const std::vector<std::pair<double, const GramMatrix*>>& parts) {
  if (parts.empty()) throw Error("combine needs at least one gram matrix");
  const GramMatrix& first = *parts.front().second;
  GramMatrix out;
  out.tasks = first.tasks;
  const int n = first.size();
  out.values.assign(n, std::vector<double>(n, 0.0));
  std::string fp = "lin(";
  for (size_t p = 0; p < parts.size(); ++p) {
    const auto& [weight, m] = parts[p];
    if (weight <= 0) throw Error("combination weights must be positive");
    if (m->tasks != first.tasks)
      throw Error("combined gram matrices must cover the same tasks in the same order");
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) out.values[i][j] += weight * m->values[i][j];
    }
    if (p) fp += "+";
    fp += std::to_string(weight) + "*" + m->config_fingerprint;
  }
  out.config_fingerprint = fp + ")";
  return out;
}

// Kernel values of one query graph against a fixed graph list (a gram "row"
// for a new instance). Same lockstep scheme as gram(); the table is taken by
// value so persisted tables are not mutated by prediction.
inline std::vector<double> kernel_row(const VerificationGraph& query,
                                      const std::vector<const VerificationGraph*>& graphs,
                                      const KernelConfig& cfg, CompressionTable z) {
  const int n = static_cast<int>(graphs.size());
  std::vector<std::vector<int>> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = initial_labels(*graphs[i], z);
  std::vector<int> qlabels = initial_labels(query, z);
  std::vector<std::int64_t> acc(n, 0);
  for (int round = 0;; ++round) {
    const auto qh = detail::depth_histogram(query, qlabels, cfg.depth);
    for (int i = 0; i < n; ++i) {
      acc[i] += detail::histogram_product(
          qh, detail::depth_histogram(*graphs[i], labels[i], cfg.depth));
    }
    if (round == cfg.iterations) break;
    for (int i = 0; i < n; ++i)
      labels[i] = relabel_step(*graphs[i], labels[i], cfg.selector, z);
    qlabels = relabel_step(query, qlabels, cfg.selector, z);
  }
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) row[i] = static_cast<double>(acc[i]);
  return row;
}

} // namespace vgk

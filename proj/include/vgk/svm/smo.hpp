#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vgk/error.hpp"
#include "vgk/gram.hpp"
#include "vgk/numeric.hpp"
#include "vgk/svm/platt.hpp"

namespace vgk {

// Binary training set referencing rows of a precomputed Gram matrix.
struct BinaryDataset {
  std::vector<int> indices; // gram row/column per instance
  std::vector<int> labels;  // +1 / -1, aligned with indices
};

// Soft-margin SVM in dual form over a precomputed kernel, plus a fitted Platt
// sigmoid. For single-class data a constant model is returned, flagged
// degenerate (probability pinned at 0 or 1).
struct PairwiseModel {
  std::vector<int> support_indices; // gram indices with alpha > 0
  std::vector<double> alpha;        // dual coefficients, 0 < alpha <= C
  std::vector<int> support_labels;  // +1 / -1
  double bias = 0.0;
  double platt_a = 0.0;
  double platt_b = 0.0;
  double C = 1.0;
  bool degenerate = false;
  int degenerate_label = 0;       // the single training class, when degenerate
  bool jittered = false;          // gram was not PSD; diagonal jitter applied
  bool platt_converged = true;
  std::string kernel_fingerprint;

  // f(x) = sum_i alpha_i y_i k(x_i, x) + b; `row[t]` = k(x_t, x) in gram order.
  double decision(std::span<const double> row) const {
    if (degenerate) return static_cast<double>(degenerate_label);
    double f = bias;
    for (size_t s = 0; s < support_indices.size(); ++s) {
      const int idx = support_indices[s];
      if (idx < 0 || static_cast<size_t>(idx) >= row.size())
        throw Error("kernel row does not cover support instance " + std::to_string(idx));
      f += alpha[s] * support_labels[s] * row[idx];
    }
    return f;
  }

  double probability(double decision_value) const {
    if (degenerate) return degenerate_label > 0 ? 1.0 : 0.0;
    return platt_apply(platt_a, platt_b, decision_value);
  }
};

namespace detail {

// SMO with maximal-violating-pair working set selection on
//   min 1/2 a'Qa - e'a,  0 <= a <= C,  y'a = 0,  Q_ij = y_i y_j K_ij.
// Returns false if the iteration limit was hit before the KKT gap closed.
inline bool solve_smo(const std::vector<std::vector<double>>& k,
                      const std::vector<int>& y, double c, double tol,
                      std::vector<double>& alpha, double& bias) {
  const int n = static_cast<int>(y.size());
  alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  const double tau = 1e-12;
  const long long max_iter = std::max(10000000LL, 100LL * n * n);

  auto q = [&](int i, int j) { return y[i] * y[j] * k[i][j]; };

  bool converged = false;
  for (long long iter = 0; iter < max_iter; ++iter) {
    // i: most violating in I_up, j: most violating in I_low
    int i = -1, j = -1;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < n; ++t) {
      const bool up = (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0);
      const bool low = (y[t] > 0 && alpha[t] > 0) || (y[t] < 0 && alpha[t] < c);
      const double v = -y[t] * grad[t];
      if (up && v > gmax) {
        gmax = v;
        i = t;
      }
      if (low && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    if (i < 0 || j < 0 || gmax - gmin < tol) {
      converged = true;
      break;
    }

    const double old_ai = alpha[i], old_aj = alpha[j];
    if (y[i] != y[j]) {
      double quad = q(i, i) + q(j, j) + 2.0 * q(i, j);
      if (quad <= 0) quad = tau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else {
        if (alpha[i] < 0) {
          alpha[i] = 0;
          alpha[j] = -diff;
        }
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = c + diff;
        }
      }
    } else {
      double quad = q(i, i) + q(j, j) - 2.0 * q(i, j);
      if (quad <= 0) quad = tau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = sum;
        }
        if (alpha[i] < 0) {
          alpha[i] = 0;
          alpha[j] = sum;
        }
      }
    }
    const double dai = alpha[i] - old_ai;
    const double daj = alpha[j] - old_aj;
    for (int t = 0; t < n; ++t) grad[t] += q(t, i) * dai + q(t, j) * daj;
  }

  // bias from the free support vectors, midpoint of the bounds otherwise
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  int nr_free = 0;
  for (int t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (alpha[t] >= c) {
      if (y[t] < 0)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else if (alpha[t] <= 0) {
      if (y[t] > 0)
        ub = std::min(ub, yg);
      else
        lb = std::max(lb, yg);
    } else {
      ++nr_free;
      sum_free += yg;
    }
  }
  const double rho = nr_free > 0 ? sum_free / nr_free : (ub + lb) / 2.0;
  bias = -rho;
  return converged;
}

} // namespace detail

inline constexpr double kSmoTolerance = 1e-3;

// Trains on the gram sub-problem selected by `data`. If the selected kernel
// block is not empirically PSD, a 1e-8 diagonal jitter is applied and
// training retried once (the model is flagged).
inline PairwiseModel train(const GramMatrix& gram, const BinaryDataset& data, double c,
                           double tol = kSmoTolerance) {
  if (c <= 0) throw Error("svm: C must be positive");
  if (data.indices.size() != data.labels.size())
    throw Error("svm: indices and labels differ in length");
  if (data.indices.empty()) throw Error("svm: empty training set");
  for (int idx : data.indices) {
    if (idx < 0 || idx >= gram.size())
      throw Error("svm: instance index " + std::to_string(idx) + " outside gram");
  }

  PairwiseModel model;
  model.C = c;
  model.kernel_fingerprint = gram.config_fingerprint;

  bool has_pos = false, has_neg = false;
  for (int y : data.labels) {
    if (y > 0)
      has_pos = true;
    else if (y < 0)
      has_neg = true;
    else
      throw Error("svm: labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) {
    model.degenerate = true;
    model.degenerate_label = has_pos ? 1 : -1;
    return model;
  }

  const int n = static_cast<int>(data.indices.size());
  std::vector<std::vector<double>> k(n, std::vector<double>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) k[a][b] = gram.at(data.indices[a], data.indices[b]);
  }

  if (!empirically_psd(k)) {
    model.jittered = true;
    for (int a = 0; a < n; ++a) k[a][a] += 1e-8;
  }

  std::vector<double> alpha;
  double bias = 0.0;
  detail::solve_smo(k, data.labels, c, tol, alpha, bias);

  model.bias = bias;
  for (int a = 0; a < n; ++a) {
    if (alpha[a] > 0) {
      model.support_indices.push_back(data.indices[a]);
      model.alpha.push_back(alpha[a]);
      model.support_labels.push_back(data.labels[a]);
    }
  }
  return model;
}

// Fits the Platt sigmoid on the model's own training decisions.
inline void fit_platt_on_training(PairwiseModel& model, const GramMatrix& gram,
                                  const BinaryDataset& data) {
  if (model.degenerate) return;
  std::vector<double> decisions;
  decisions.reserve(data.indices.size());
  for (int idx : data.indices) {
    std::span<const double> row(gram.values.at(idx));
    decisions.push_back(model.decision(row));
  }
  const PlattParams p = platt_fit(decisions, data.labels);
  model.platt_a = p.a;
  model.platt_b = p.b;
  model.platt_converged = p.converged;
}

// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij for a
// trained model (non-support alphas are zero).
inline double dual_objective(const PairwiseModel& model, const GramMatrix& gram) {
  if (model.degenerate) return 0.0;
  double linear = 0.0, quad = 0.0;
  const size_t m = model.support_indices.size();
  for (size_t a = 0; a < m; ++a) {
    linear += model.alpha[a];
    for (size_t b = 0; b < m; ++b) {
      quad += model.alpha[a] * model.alpha[b] * model.support_labels[a] *
              model.support_labels[b] *
              gram.at(model.support_indices[a], model.support_indices[b]);
    }
  }
  return linear - 0.5 * quad;
}

} // namespace vgk

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "vgk/error.hpp"

namespace vgk {

struct PlattParams {
  double a = 0.0;
  double b = 0.0;
  bool converged = true;
};

// p(f) = 1 / (1 + exp(a*f + b)), evaluated without overflow and clamped to
// the open interval (0,1).
inline double platt_apply(double a, double b, double f) {
  const double t = a * f + b;
  double p;
  if (t >= 0) {
    const double e = std::exp(-t);
    p = e / (1.0 + e);
  } else {
    p = 1.0 / (1.0 + std::exp(t));
  }
  return std::clamp(p, 1e-15, 1.0 - 1e-15);
}

inline double platt_apply(const PlattParams& p, double f) {
  return platt_apply(p.a, p.b, f);
}

// Regularized maximum-likelihood sigmoid fit with prior-corrected targets
// t+ = (N+ + 1)/(N+ + 2), t- = 1/(N- + 2), solved by Newton iterations with
// backtracking. At most 100 Newton steps; a non-converged fit returns the
// last iterate flagged.
inline PlattParams platt_fit(const std::vector<double>& decisions,
                             const std::vector<int>& labels) {
  if (decisions.size() != labels.size())
    throw Error("platt_fit: decisions and labels differ in length");
  const int n = static_cast<int>(decisions.size());
  int pos = 0, neg = 0;
  for (int y : labels) (y > 0 ? pos : neg)++;
  if (pos == 0 || neg == 0)
    throw Error("platt_fit: both classes must be present");

  const double hi = (pos + 1.0) / (pos + 2.0);
  const double lo = 1.0 / (neg + 2.0);
  std::vector<double> target(n);
  for (int i = 0; i < n; ++i) target[i] = labels[i] > 0 ? hi : lo;

  const int max_iter = 100;
  const double min_step = 1e-10;
  const double sigma = 1e-12; // Hessian ridge
  const double eps = 1e-5;

  double a = 0.0;
  double b = std::log((neg + 1.0) / (pos + 1.0));

  auto objective = [&](double pa, double pb) {
    double fval = 0.0;
    for (int i = 0; i < n; ++i) {
      const double fApB = decisions[i] * pa + pb;
      if (fApB >= 0)
        fval += target[i] * fApB + std::log1p(std::exp(-fApB));
      else
        fval += (target[i] - 1) * fApB + std::log1p(std::exp(fApB));
    }
    return fval;
  };

  double fval = objective(a, b);
  bool converged = false;
  for (int iter = 0; iter < max_iter; ++iter) {
    double h11 = sigma, h22 = sigma, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double fApB = decisions[i] * a + b;
      double p, q;
      if (fApB >= 0) {
        p = std::exp(-fApB) / (1.0 + std::exp(-fApB));
        q = 1.0 / (1.0 + std::exp(-fApB));
      } else {
        p = 1.0 / (1.0 + std::exp(fApB));
        q = std::exp(fApB) / (1.0 + std::exp(fApB));
      }
      const double d2 = p * q;
      h11 += decisions[i] * decisions[i] * d2;
      h22 += d2;
      h21 += decisions[i] * d2;
      const double d1 = target[i] - p;
      g1 += decisions[i] * d1;
      g2 += d1;
    }
    if (std::abs(g1) < eps && std::abs(g2) < eps) {
      converged = true;
      break;
    }
    const double det = h11 * h22 - h21 * h21;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    while (step >= min_step) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nf = objective(na, nb);
      if (nf < fval + 1e-4 * step * gd) {
        a = na;
        b = nb;
        fval = nf;
        break;
      }
      step /= 2.0;
    }
    if (step < min_step) break; // line search failed
  }
  return {a, b, converged};
}

} // namespace vgk

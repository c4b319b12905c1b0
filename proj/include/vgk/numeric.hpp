#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "vgk/error.hpp"

namespace vgk {

// Eigenvalue range of a symmetric matrix.
inline std::pair<double, double> symmetric_eigen_range(
    const std::vector<std::vector<double>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) throw Error("eigen range of an empty matrix");
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) throw Error("matrix is not square");
    for (int j = 0; j < n; ++j) a(i, j) = m[i][j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue computation failed");
  const auto& ev = solver.eigenvalues();
  return {ev(0), ev(n - 1)};
}

// min eigenvalue >= -rel_tol * max(|max eigenvalue|, 1)
inline bool empirically_psd(const std::vector<std::vector<double>>& m,
                            double rel_tol = 1e-6) {
  auto [lo, hi] = symmetric_eigen_range(m);
  const double scale = std::max(std::abs(hi), 1.0);
  return lo >= -rel_tol * scale;
}

} // namespace vgk

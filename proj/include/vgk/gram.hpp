#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vgk/error.hpp"

namespace vgk {

// Kernel values over an ordered task list; the learner's entire view of the
// instances. Produced by the WL kernel machinery, consumed by the SVM.
struct GramMatrix {
  std::vector<std::string> tasks;
  std::string config_fingerprint;
  std::vector<std::vector<double>> values;

  int size() const { return static_cast<int>(tasks.size()); }

  double at(int i, int j) const { return values.at(i).at(j); }

  void validate() const {
    const size_t n = tasks.size();
    if (values.size() != n) throw Error("gram matrix size does not match task list");
    for (size_t i = 0; i < n; ++i) {
      if (values[i].size() != n) throw Error("gram matrix is not square");
      if (values[i][i] < 0) throw Error("gram matrix has a negative diagonal entry");
      for (size_t j = 0; j < i; ++j) {
        if (std::abs(values[i][j] - values[j][i]) > 1e-9)
          throw Error("gram matrix is not symmetric");
      }
    }
  }
};

} // namespace vgk

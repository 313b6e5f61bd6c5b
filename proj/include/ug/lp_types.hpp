#pragma once

#include <vector>

namespace ug {

// Fractional label weights, one simplex per vertex: sum_i x(u,i) = 1, x >= 0.
struct LPWeights {
  int n = 0;
  int k = 0;
  std::vector<double> x;  // n*k, row-major by vertex
  double objective = 0.0;

  double at(int u, int i) const {
    return x[static_cast<std::size_t>(u) * k + i];
  }
  double& at(int u, int i) {
    return x[static_cast<std::size_t>(u) * k + i];
  }
};

}  // namespace ug

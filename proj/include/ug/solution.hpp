#pragma once

#include <span>
#include <string>
#include <vector>

#include "ug/instance.hpp"

namespace ug {

enum class SdpFlavor { Standard, Crude, ShiftInvariant };

std::string to_string(SdpFlavor f);
SdpFlavor flavor_from_string(const std::string& s);

// One d-dimensional vector per (vertex,label) pair. Row p = u*k+i of `data`.
struct VectorSolution {
  SdpFlavor flavor = SdpFlavor::Standard;
  int n = 0;
  int k = 0;
  int d = 0;
  std::vector<double> data;  // (n*k) x d, row-major

  int rows() const { return n * k; }

  std::span<const double> vec(int u, int i) const {
    return row(u * k + i);
  }
  std::span<const double> row(int p) const {
    return {data.data() + static_cast<std::size_t>(p) * d,
            static_cast<std::size_t>(d)};
  }
  std::span<double> mutable_row(int p) {
    return {data.data() + static_cast<std::size_t>(p) * d,
            static_cast<std::size_t>(d)};
  }
};

double dot(std::span<const double> a, std::span<const double> b);
double sqdist(std::span<const double> a, std::span<const double> b);
double sqnorm(std::span<const double> a);

// (1/2) sum_i ||u_i - v_{perm(i)}||^2 for constraint edge e.
double edge_length(const VectorSolution& sol, const UGInstance& inst, int e);

}  // namespace ug

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ug/stats.hpp"

namespace ug {

// Derives a child seed from a master seed and up to two stream indices via
// splitmix64 chaining. Independent streams keep batch generation and the
// harness worker pool reproducible regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0);

// Deterministic random source. All floating-point draws are built from raw
// 64-bit outputs so results do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0,1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0,1), never returns an endpoint.
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  int uniform_int(int n);

  // Standard normal via the inverse CDF; deterministic across platforms.
  double normal() { return inverse_normal_cdf(uniform_open()); }

  void normal_fill(std::vector<double>& out) {
    for (auto& v : out) v = normal();
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      int j = uniform_int(i + 1);
      std::swap(v[i], v[static_cast<std::size_t>(j)]);
    }
  }

  // Uniform random permutation of [k].
  std::vector<int> permutation(int k);

  // Uniform random permutation of [k] with pi(a) = b fixed; uniform over the
  // (k-1)! permutations mapping a to b.
  std::vector<int> permutation_fixing(int k, int a, int b);

  // Uniform random subset of size r from [m], returned sorted.
  std::vector<int> subset(int m, int r);

 private:
  std::mt19937_64 eng_;
};

}  // namespace ug

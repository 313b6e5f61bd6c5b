#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ug/instance.hpp"
#include "ug/lp_types.hpp"
#include "ug/rng.hpp"
#include "ug/solution.hpp"

namespace ug::rounding {

struct SeparatorParams {
  double alpha = 0.0;   // probability scale 1/(2k^2)
  double t = 0.0;       // Gaussian threshold with Pr(xi >= t) = alpha
  long long iter_cap = 0;  // n*k/alpha
  std::uint64_t seed = 1;

  static SeparatorParams make(int n, int k, std::uint64_t seed);
};

// One draw of the LP-weighted separator: a fresh Gaussian g and a uniform
// threshold r in (0,1) select S = {(u,i): <u_i,g> >= t and x(u,i) >= r}.
std::vector<std::pair<int, int>> sample_separator(const VectorSolution& sol,
                                                  const LPWeights& w,
                                                  const SeparatorParams& params,
                                                  Rng& rng);

// Iterative separator rounding: vertices whose separator restriction is a
// singleton get that label; survivors past the iteration cap get label 0.
Labeling round_lp_sdp(const UGInstance& inst, const VectorSolution& sol,
                      const LPWeights& w, const SeparatorParams& params);

// Gaussian-projection rounding of a standard solution: per trial, each
// vertex takes the label maximizing <u_i/||u_i||, g> among labels with
// ||u_i||^2 >= 1/(2k) (falling back to the largest block norm); the best of
// `trials` labelings by value is returned.
Labeling round_cmm(const UGInstance& inst, const VectorSolution& sol, int trials,
                   Rng& rng);
inline constexpr int kDefaultCmmTrials = 25;

// Deterministic threshold rounding: the unique label with squared norm > 1/2
// when it exists, otherwise the smallest-index label of maximal squared norm.
Labeling round_threshold(const VectorSolution& sol);

}  // namespace ug::rounding

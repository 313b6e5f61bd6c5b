#include "ug/rounding.hpp"

#include <cmath>
#include <stdexcept>

#include "ug/stats.hpp"

namespace ug::rounding {

SeparatorParams SeparatorParams::make(int n, int k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("SeparatorParams: k must be >= 2");
  SeparatorParams p;
  p.alpha = 1.0 / (2.0 * k * k);
  p.t = inverse_normal_cdf(1.0 - p.alpha);
  p.iter_cap = static_cast<long long>(
      std::ceil(static_cast<double>(n) * k / p.alpha));
  p.seed = seed;
  return p;
}

std::vector<std::pair<int, int>> sample_separator(const VectorSolution& sol,
                                                  const LPWeights& w,
                                                  const SeparatorParams& params,
                                                  Rng& rng) {
  std::vector<double> g(static_cast<std::size_t>(sol.d));
  rng.normal_fill(g);
  const double r = rng.uniform_open();
  std::vector<std::pair<int, int>> s;
  for (int u = 0; u < sol.n; ++u) {
    for (int i = 0; i < sol.k; ++i) {
      if (w.at(u, i) < r) continue;
      if (dot(sol.vec(u, i), g) >= params.t) s.emplace_back(u, i);
    }
  }
  return s;
}

Labeling round_lp_sdp(const UGInstance& inst, const VectorSolution& sol,
                      const LPWeights& w, const SeparatorParams& params) {
  if (sol.n != inst.n || sol.k != inst.k)
    throw std::invalid_argument("round_lp_sdp: solution/instance mismatch");
  Rng rng(params.seed);
  Labeling lab;
  lab.x.assign(static_cast<std::size_t>(inst.n), 0);
  std::vector<char> processed(static_cast<std::size_t>(inst.n), 0);
  int remaining = inst.n;
  std::vector<double> g(static_cast<std::size_t>(sol.d));

  for (long long iter = 0; iter < params.iter_cap && remaining > 0; ++iter) {
    rng.normal_fill(g);
    const double r = rng.uniform_open();
    for (int u = 0; u < inst.n; ++u) {
      if (processed[static_cast<std::size_t>(u)]) continue;
      int hit = -1;
      bool multiple = false;
      for (int i = 0; i < inst.k; ++i) {
        if (w.at(u, i) < r) continue;
        if (dot(sol.vec(u, i), g) >= params.t) {
          if (hit >= 0) {
            multiple = true;
            break;
          }
          hit = i;
        }
      }
      if (hit >= 0 && !multiple) {
        lab.x[static_cast<std::size_t>(u)] = hit;
        processed[static_cast<std::size_t>(u)] = 1;
        --remaining;
      }
    }
  }
  // Survivors keep label 0 (the deterministic fallback).
  return lab;
}

Labeling round_cmm(const UGInstance& inst, const VectorSolution& sol, int trials,
                   Rng& rng) {
  if (sol.n != inst.n || sol.k != inst.k)
    throw std::invalid_argument("round_cmm: solution/instance mismatch");
  if (trials < 1) throw std::invalid_argument("round_cmm: trials must be >= 1");
  const double norm_floor = 1.0 / (2.0 * inst.k);

  // Precompute block norms and normalized directions.
  std::vector<double> norms2(static_cast<std::size_t>(sol.rows()));
  for (int p = 0; p < sol.rows(); ++p) norms2[static_cast<std::size_t>(p)] = sqnorm(sol.row(p));
  for (int u = 0; u < inst.n; ++u) {
    double block = 0.0;
    for (int i = 0; i < inst.k; ++i)
      block += norms2[static_cast<std::size_t>(u * inst.k + i)];
    if (block < 1e-9)
      throw std::invalid_argument("round_cmm: all-zero block in solution");
  }

  std::vector<double> g(static_cast<std::size_t>(sol.d));
  Labeling best;
  double best_val = -1.0;
  for (int trial = 0; trial < trials; ++trial) {
    rng.normal_fill(g);
    Labeling lab;
    lab.x.resize(static_cast<std::size_t>(inst.n));
    for (int u = 0; u < inst.n; ++u) {
      int arg = -1;
      double arg_score = 0.0;
      for (int i = 0; i < inst.k; ++i) {
        double nn = norms2[static_cast<std::size_t>(u * inst.k + i)];
        if (nn < norm_floor) continue;
        double score = dot(sol.vec(u, i), g) / std::sqrt(nn);
        if (arg < 0 || score > arg_score) {
          arg = i;
          arg_score = score;
        }
      }
      if (arg < 0) {
        // No label clears the norm floor; take the heaviest block entry.
        arg = 0;
        for (int i = 1; i < inst.k; ++i)
          if (norms2[static_cast<std::size_t>(u * inst.k + i)] >
              norms2[static_cast<std::size_t>(u * inst.k + arg)])
            arg = i;
      }
      lab.x[static_cast<std::size_t>(u)] = arg;
    }
    double val = value(inst, lab);
    if (val > best_val) {
      best_val = val;
      best = std::move(lab);
    }
  }
  return best;
}

Labeling round_threshold(const VectorSolution& sol) {
  Labeling lab;
  lab.x.resize(static_cast<std::size_t>(sol.n));
  for (int u = 0; u < sol.n; ++u) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < sol.k; ++i) {
      double nn = sqnorm(sol.vec(u, i));
      if (nn > 0.5) {
        // At most one label can exceed 1/2 under the block normalization.
        arg = i;
        break;
      }
      if (nn > best) {
        best = nn;
        arg = i;
      }
    }
    lab.x[static_cast<std::size_t>(u)] = arg;
  }
  return lab;
}

}  // namespace ug::rounding

#pragma once

#include <cstdint>
#include <vector>

#include "ug/instance.hpp"
#include "ug/solution.hpp"

namespace ug::sdp {

enum class TriangleMode { Off, Lazy };

struct PenaltySchedule {
  double mu_init = 4.0;
  double mu_growth = 2.0;
  double mu_max = 1e7;
};

struct SdpConfig {
  SdpFlavor flavor = SdpFlavor::Standard;
  int dim = 0;              // embedding dimension; 0 selects the default
  double tol_feas = 1e-3;   // feasibility tolerance per constraint family
  double tol_opt = 1e-5;    // stall tolerance (relative decrease over window)
  int max_epochs = 1500;
  // Vertex-triple triangle inequalities for the standard flavor; the crude
  // flavor always separates its edge-local triangle family lazily.
  TriangleMode triangle = TriangleMode::Off;
  int lazy_batch = 512;     // constraints activated per separation pass
  int separation_interval = 10;
  int multiplier_interval = 10;
  int stall_window = 50;
  PenaltySchedule penalty;
  int nonneg_samples = 2048;
  std::uint64_t seed = 1;

  int resolved_dim(int n, int k) const;
};

struct ResidualReport {
  double max_norm_dev = 0.0;
  double max_orth = 0.0;
  double max_nonneg_violation = 0.0;    // NaN when family not monitored
  double max_triangle_violation = 0.0;  // NaN when family not monitored
};

struct SolveResult {
  VectorSolution sol;
  double objective = 0.0;
  bool stalled = false;
  int epochs = 0;
  ResidualReport residuals;
  // Objectives of accepted (incumbent-improving) iterates, in order; the
  // sequence is nonincreasing by construction and tests assert it.
  std::vector<double> accepted_objectives;
};

// min (1/(2|E|)) sum_e sum_i ||u_i - v_{perm(i)}||^2 over per-vertex blocks
// with sum_i ||u_i||^2 = 1, <u_i,u_j> = 0, <u_i,v_j> >= 0.
SolveResult solve_standard(const UGInstance& inst, const SdpConfig& cfg);

// min sum_e sum_i ||u_i - v_{perm(i)}||^2 / 2 over unit vectors with
// per-vertex orthogonality and the edge-local triangle family
// <u_i,v_j> + <u_i',v_j> <= 1.
SolveResult solve_crude(const UGInstance& inst, const SdpConfig& cfg);

// Linear instances only: unit-vector program with objective
// (1/k)(1/(2|E|)) sum_e sum_i ||u_i - v_{i+s}||^2; the returned solution is
// symmetrized, so its distances are exactly shift-invariant.
SolveResult solve_shift_invariant(const UGInstance& inst, const SdpConfig& cfg);

// u'_i = (1/sqrt(k)) (+)_j u_{i+j}; output dimension k*d. Preserves unit
// norms and the objective, makes distances shift-invariant.
VectorSolution symmetrize(const VectorSolution& sol, const UGInstance& inst);

// Threshold for eta-super-short label-extended edges; natural logarithm.
double super_short_threshold(double eta, double cstar, double k);

struct SuperShortSet {
  double eta = 0.0;
  double cstar = 1.0;
  double threshold = 0.0;
  // One entry per super-short label-extended edge: constraint edge index and
  // the label i at u (so the pair is ((u,i),(v,perm(i)))).
  struct Entry {
    int edge = 0;
    int label = 0;
  };
  std::vector<Entry> edges;

  int size() const { return static_cast<int>(edges.size()); }
};

// All label-extended edges with ||u_i - v_{perm(i)}||^2 <= cstar*eta^2/log k
// under a crude solution.
SuperShortSet super_short_edges(const VectorSolution& sol, const UGInstance& inst,
                                double eta, double cstar);

// Number of super-short edges lying in the layer of `layer` (x_u per vertex),
// i.e. |Gamma ∩ L|.
int layer_restriction_count(const SuperShortSet& gamma, const UGInstance& inst,
                            const Labeling& layer);

struct EdgePartition {
  double eta = 0.0;
  std::vector<int> long_edges;
  std::vector<int> short_edges;
};

// Standard flavor: edge is long iff edge_length > eta. Shift-invariant
// solutions of linear instances use the per-shift criterion
// (1/2)||u_i - v_{i+s}||^2 > eta.
EdgePartition classify_long_edges(const VectorSolution& sol,
                                  const UGInstance& inst, double eta);

}  // namespace ug::sdp

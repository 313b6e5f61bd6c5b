#include "ug/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <cstdlib>
#include <cstdio>

#include "ug/rng.hpp"

namespace ug::sdp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PairConstraint {
  int p = 0;
  int q = 0;
};

struct TriangleConstraint {
  int p = 0;   // first label node of the doubled side
  int p2 = 0;  // second label node, same vertex as p
  int q = 0;   // single label node on the other side
};

std::uint64_t pair_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::uint64_t triple_key(int a, int b, int c) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 42) ^
         (static_cast<std::uint64_t>(b) << 21) ^ static_cast<std::uint64_t>(c);
}

// Jacobi eigensolver for small symmetric matrices (k <= a few dozen).
// A is k x k row-major and is destroyed; eigenvectors land in rows of P.
void jacobi_eigen(std::vector<double>& a, int k, std::vector<double>& eval,
                  std::vector<double>& pvec) {
  eval.assign(static_cast<std::size_t>(k), 0.0);
  pvec.assign(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i) pvec[static_cast<std::size_t>(i) * k + i] = 1.0;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        off += a[static_cast<std::size_t>(i) * k + j] *
               a[static_cast<std::size_t>(i) * k + j];
    if (off < 1e-26) break;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        double apq = a[static_cast<std::size_t>(i) * k + j];
        if (std::fabs(apq) < 1e-300) continue;
        double app = a[static_cast<std::size_t>(i) * k + i];
        double aqq = a[static_cast<std::size_t>(j) * k + j];
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int l = 0; l < k; ++l) {
          double ail = a[static_cast<std::size_t>(i) * k + l];
          double ajl = a[static_cast<std::size_t>(j) * k + l];
          a[static_cast<std::size_t>(i) * k + l] = c * ail - s * ajl;
          a[static_cast<std::size_t>(j) * k + l] = s * ail + c * ajl;
        }
        for (int l = 0; l < k; ++l) {
          double ali = a[static_cast<std::size_t>(l) * k + i];
          double alj = a[static_cast<std::size_t>(l) * k + j];
          a[static_cast<std::size_t>(l) * k + i] = c * ali - s * alj;
          a[static_cast<std::size_t>(l) * k + j] = s * ali + c * alj;
        }
        for (int l = 0; l < k; ++l) {
          double pil = pvec[static_cast<std::size_t>(i) * k + l];
          double pjl = pvec[static_cast<std::size_t>(j) * k + l];
          pvec[static_cast<std::size_t>(i) * k + l] = c * pil - s * pjl;
          pvec[static_cast<std::size_t>(j) * k + l] = s * pil + c * pjl;
        }
      }
    }
  }
  for (int i = 0; i < k; ++i)
    eval[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * k + i];
}

// Shared first-order engine: projected descent with Barzilai-Borwein steps,
// augmented-Lagrangian multipliers on the per-vertex orthogonality family and
// quadratic hinge penalties on lazily separated inequality families.
class FirstOrderSolver {
 public:
  FirstOrderSolver(const UGInstance& inst, const SdpConfig& cfg, SdpFlavor flavor)
      : inst_(inst), cfg_(cfg), flavor_(flavor), rng_(cfg.seed) {
    n_ = inst.n;
    k_ = inst.k;
    d_ = cfg.resolved_dim(n_, k_);
    rows_ = n_ * k_;
    const int m = inst.edge_count();

    matched_.reserve(static_cast<std::size_t>(m) * k_);
    for (int e = 0; e < m; ++e) {
      const auto& ed = inst.edges[static_cast<std::size_t>(e)];
      for (int i = 0; i < k_; ++i)
        matched_.push_back(
            {ed.u * k_ + i, ed.v * k_ + ed.perm[static_cast<std::size_t>(i)]});
    }
    switch (flavor_) {
      case SdpFlavor::Standard:
        int_scale_ = m > 0 ? 1.0 / (2.0 * m) : 0.0;
        rep_scale_ = int_scale_;
        break;
      case SdpFlavor::Crude:
        int_scale_ = m > 0 ? 1.0 / (2.0 * m) : 0.0;
        rep_scale_ = 0.5;
        break;
      case SdpFlavor::ShiftInvariant:
        int_scale_ = m > 0 ? 1.0 / (2.0 * m * k_) : 0.0;
        rep_scale_ = int_scale_;
        break;
    }
    orth_pairs_per_vertex_ = k_ * (k_ - 1) / 2;
    orth_lambda_.assign(static_cast<std::size_t>(n_) * orth_pairs_per_vertex_, 0.0);
    // Penalty weights live in units of the per-vertex objective gradient, so
    // constraint enforcement stays balanced against descent as m grows.
    pen_unit_ = m > 0 ? int_scale_ * (2.0 * m / n_) : 1.0;
    mu_orth_ = cfg_.penalty.mu_init * pen_unit_;
    mu_nn_ = cfg_.penalty.mu_init * pen_unit_;
    mu_tri_ = cfg_.penalty.mu_init * pen_unit_;

    // Per-vertex incidence with precomputed label maps in both directions.
    incident_.resize(static_cast<std::size_t>(n_));
    inv_perms_.reserve(inst.edges.size());
    for (const auto& ed : inst.edges) {
      std::vector<int> inv(ed.perm.size());
      for (std::size_t i = 0; i < ed.perm.size(); ++i)
        inv[static_cast<std::size_t>(ed.perm[i])] = static_cast<int>(i);
      inv_perms_.push_back(std::move(inv));
    }
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
      const auto& ed = inst.edges[e];
      incident_[static_cast<std::size_t>(ed.u)].push_back(
          {ed.v, ed.perm.data()});
      incident_[static_cast<std::size_t>(ed.v)].push_back(
          {ed.u, inv_perms_[e].data()});
    }

    v_.assign(static_cast<std::size_t>(rows_) * d_, 0.0);
    grad_.assign(v_.size(), 0.0);
    initialize();
  }

  SolveResult run() {
    SolveResult out;
    std::vector<double> prev_v, prev_g, cand(v_.size());
    std::vector<double> best;
    double best_obj = std::numeric_limits<double>::infinity();
    std::vector<double> best_history;  // per-epoch incumbent objective
    // Non-monotone (Grippo-style) acceptance window; plain monotone
    // backtracking defeats Barzilai-Borwein steps on stiff penalties.
    constexpr int kMeritWindow = 10;

    separation_pass(v_);           // seed active sets from the initial point
    full_scan(v_);                 // initial monitored-family values
    rebuild_vertex_constraints();

    int epoch = 0;
    bool done = false;
    // Outer rounds: exact block-coordinate sweeps, then Barzilai-Borwein
    // descent to stationarity at fixed multipliers/active sets, then
    // multiplier updates and lazy separation.
    while (!done && epoch < cfg_.max_epochs) {
      double inner_start_merit = evaluate(v_, nullptr).merit;

      // Block-coordinate phase: each sweep solves every per-vertex
      // subproblem exactly (Procrustes with free weights), which handles the
      // low-rank directions where plain gradient descent crawls.
      for (int sweep = 0; sweep < 80 && epoch < cfg_.max_epochs; ++sweep) {
        double gain = bcd_sweep(v_);
        ++epoch;
        Stats sst = evaluate(v_, nullptr);
        double obj = sst.pair_sum * rep_scale_;
        bool feasible =
            sst.orth_max <= cfg_.tol_feas &&
            std::max(sst.active_nn_viol, scan_nn_viol_) <= cfg_.tol_feas &&
            std::max(sst.active_tri_viol, scan_tri_viol_) <= cfg_.tol_feas;
        if (feasible && obj < best_obj - 1e-12) {
          best = v_;
          best_obj = obj;
          out.accepted_objectives.push_back(obj);
        }
        best_history.push_back(best_obj);
        if (trace_ && epoch % 25 == 0)
          std::fprintf(stderr, "ep %4d bcd merit %.6f obj %.6f gain %.2e rej %ld\n",
                       epoch, sst.merit, obj, gain, bcd_rejects_);
        if (gain < 1e-9 * std::max(1.0, std::fabs(sst.merit))) break;
      }

      Stats st = evaluate(v_, &grad_);
      double merit = st.merit;
      std::vector<double> recent_merits{merit};
      double step = 1e-2;
      bool have_prev = false;
      int inner_start_epoch = epoch;
      int flat = 0;  // consecutive epochs without meaningful merit decrease

      while (epoch < cfg_.max_epochs) {
        if (have_prev) {
          double ss = 0.0, sy = 0.0;
          for (std::size_t t = 0; t < v_.size(); ++t) {
            double s = v_[t] - prev_v[t];
            double y = grad_[t] - prev_g[t];
            ss += s * s;
            sy += s * y;
          }
          if (ss > 0 && sy > 0) step = std::clamp(ss / sy, 1e-9, 1e2);
        }
        prev_v = v_;
        prev_g = grad_;

        double g2 = 0.0;
        for (double g : grad_) g2 += g * g;
        double merit_ref =
            *std::max_element(recent_merits.begin(), recent_merits.end());
        double merit_before = merit;
        bool moved = false;
        for (int tries = 0; tries < 40; ++tries) {
          for (std::size_t t = 0; t < v_.size(); ++t)
            cand[t] = v_[t] - step * grad_[t];
          project(cand);
          Stats cst = evaluate(cand, nullptr);
          if (cst.merit <= merit_ref - 1e-4 * step * g2) {
            v_.swap(cand);
            moved = true;
            break;
          }
          step *= 0.5;
        }
        ++epoch;
        have_prev = moved;
        if (moved) {
          st = evaluate(v_, &grad_);
          merit = st.merit;
          recent_merits.push_back(merit);
          if (static_cast<int>(recent_merits.size()) > kMeritWindow)
            recent_merits.erase(recent_merits.begin());
        }

        // Incumbent update: feasible-within-tolerance iterates that improve
        // the reported objective.
        double obj = st.pair_sum * rep_scale_;
        bool feasible =
            st.orth_max <= cfg_.tol_feas &&
            std::max(st.active_nn_viol, scan_nn_viol_) <= cfg_.tol_feas &&
            std::max(st.active_tri_viol, scan_tri_viol_) <= cfg_.tol_feas;
        if (feasible && obj < best_obj - 1e-12) {
          best = v_;
          best_obj = obj;
          out.accepted_objectives.push_back(obj);
        }
        best_history.push_back(best_obj);

        if (trace_ && epoch % 25 == 0)
          std::fprintf(stderr,
                       "ep %4d merit %.6f obj %.6f orth %.2e step %.2e "
                       "|g| %.2e mu %.1e best %.6f\n",
                       epoch, merit, obj, st.orth_max, step, std::sqrt(g2),
                       mu_orth_, best_obj);

        // Inner stationarity: stop the subproblem once merit decrease stalls.
        double drop = merit_before - merit;
        if (!moved || drop < 1e-7 * std::max(1.0, std::fabs(merit)))
          ++flat;
        else
          flat = 0;
        if (flat >= 6) break;
        if (epoch - inner_start_epoch >= 150) break;
      }

      // Global stall check on the incumbent objective.
      if (static_cast<int>(best_history.size()) > 2 * cfg_.stall_window &&
          !best.empty()) {
        double prev =
            best_history[best_history.size() - 1 - cfg_.stall_window];
        if (std::isfinite(prev) &&
            prev - best_obj < cfg_.tol_opt * std::max(1.0, std::fabs(prev)))
          done = true;
      }

      Stats st_end = evaluate(v_, nullptr);
      bool multipliers_needed = st_end.orth_max > 0.1 * cfg_.tol_feas;
      update_multipliers(st_end);
      int added = separation_pass(v_);
      full_scan(v_);
      if (added > 0) rebuild_vertex_constraints();
      // Fully settled: subproblem stationary, constraints satisfied, nothing
      // new to separate, and the incumbent stopped improving.
      double inner_drop = inner_start_merit - st_end.merit;
      if (!multipliers_needed && added == 0 &&
          inner_drop < cfg_.tol_opt * std::max(1.0, std::fabs(st_end.merit)) &&
          !best.empty())
        done = true;
    }

    out.epochs = epoch;
    const bool has_best = !best.empty();
    if (!has_best) best = v_;

    VectorSolution sol;
    sol.flavor = flavor_;
    sol.n = n_;
    sol.k = k_;
    sol.d = d_;
    sol.data = best;
    out.objective = reported_objective(best);
    out.residuals = final_residuals(best);
    double zero_tol =
        std::max(10.0 * cfg_.tol_opt, 1e-6) * (flavor_ == SdpFlavor::Crude
                                                   ? std::max(1, inst_.edge_count())
                                                   : 1.0);
    out.stalled = !(has_best && out.objective <= zero_tol);
    out.sol = std::move(sol);
    return out;
  }

 private:
  struct Stats {
    double merit = 0.0;
    double pair_sum = 0.0;       // raw sum of matched squared distances
    double orth_max = 0.0;       // max |<u_i,u_j>| within blocks
    double active_nn_viol = 0.0;
    double active_tri_viol = 0.0;
  };

  void initialize() {
    if (flavor_ == SdpFlavor::Standard) {
      // Per-vertex random orthonormal frame scaled by uniform simplex weights.
      std::vector<double> frame(static_cast<std::size_t>(k_) * d_);
      std::vector<double> w(static_cast<std::size_t>(k_));
      for (int u = 0; u < n_; ++u) {
        random_orthonormal_frame(frame);
        double tot = 0.0;
        for (auto& x : w) {
          x = -std::log(rng_.uniform_open());
          tot += x;
        }
        for (int i = 0; i < k_; ++i) {
          double scale = std::sqrt(w[static_cast<std::size_t>(i)] / tot);
          double* row = row_ptr(v_, u * k_ + i);
          const double* f = frame.data() + static_cast<std::size_t>(i) * d_;
          for (int c = 0; c < d_; ++c) row[c] = scale * f[c];
        }
      }
    } else {
      for (int p = 0; p < rows_; ++p) {
        double* row = row_ptr(v_, p);
        double norm2 = 0.0;
        for (int c = 0; c < d_; ++c) {
          row[c] = rng_.normal();
          norm2 += row[c] * row[c];
        }
        double inv = 1.0 / std::sqrt(std::max(norm2, 1e-300));
        for (int c = 0; c < d_; ++c) row[c] *= inv;
      }
    }
    project(v_);
  }

  void random_orthonormal_frame(std::vector<double>& frame) {
    for (auto& x : frame) x = rng_.normal();
    for (int i = 0; i < k_; ++i) {
      double* fi = frame.data() + static_cast<std::size_t>(i) * d_;
      for (int j = 0; j < i; ++j) {
        const double* fj = frame.data() + static_cast<std::size_t>(j) * d_;
        double dotij = 0.0;
        for (int c = 0; c < d_; ++c) dotij += fi[c] * fj[c];
        for (int c = 0; c < d_; ++c) fi[c] -= dotij * fj[c];
      }
      double norm2 = 0.0;
      for (int c = 0; c < d_; ++c) norm2 += fi[c] * fi[c];
      if (norm2 < 1e-18) {
        // Degenerate draw; replace by a coordinate vector.
        std::fill(fi, fi + d_, 0.0);
        fi[i % d_] = 1.0;
        norm2 = 1.0;
      }
      double inv = 1.0 / std::sqrt(norm2);
      for (int c = 0; c < d_; ++c) fi[c] *= inv;
    }
  }

  double* row_ptr(std::vector<double>& x, int p) const {
    return x.data() + static_cast<std::size_t>(p) * d_;
  }
  const double* row_ptr(const std::vector<double>& x, int p) const {
    return x.data() + static_cast<std::size_t>(p) * d_;
  }

  void project(std::vector<double>& x) const {
    if (flavor_ == SdpFlavor::Standard) {
      for (int u = 0; u < n_; ++u) {
        double total = 0.0;
        const double* base = x.data() + static_cast<std::size_t>(u) * k_ * d_;
        for (int t = 0; t < k_ * d_; ++t) total += base[t] * base[t];
        double* wbase = x.data() + static_cast<std::size_t>(u) * k_ * d_;
        if (total < 1e-18) {
          std::fill(wbase, wbase + static_cast<std::size_t>(k_) * d_, 0.0);
          for (int i = 0; i < k_; ++i)
            wbase[static_cast<std::size_t>(i) * d_ + (i % d_)] =
                1.0 / std::sqrt(static_cast<double>(k_));
          continue;
        }
        double inv = 1.0 / std::sqrt(total);
        for (int t = 0; t < k_ * d_; ++t) wbase[t] *= inv;
      }
    } else {
      for (int p = 0; p < rows_; ++p) {
        double* row = x.data() + static_cast<std::size_t>(p) * d_;
        double norm2 = 0.0;
        for (int c = 0; c < d_; ++c) norm2 += row[c] * row[c];
        if (norm2 < 1e-18) {
          std::fill(row, row + d_, 0.0);
          row[p % d_] = 1.0;
          continue;
        }
        double inv = 1.0 / std::sqrt(norm2);
        for (int c = 0; c < d_; ++c) row[c] *= inv;
      }
    }
  }

  Stats evaluate(const std::vector<double>& x, std::vector<double>* grad) {
    Stats st;
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);

    // Matched-pair objective.
    double pair_sum = 0.0;
    for (const auto& pc : matched_) {
      const double* a = row_ptr(x, pc.p);
      const double* b = row_ptr(x, pc.q);
      double s = 0.0;
      for (int c = 0; c < d_; ++c) {
        double diff = a[c] - b[c];
        s += diff * diff;
      }
      pair_sum += s;
      if (grad) {
        double* ga = row_ptr(*grad, pc.p);
        double* gb = row_ptr(*grad, pc.q);
        const double w = 2.0 * int_scale_;
        for (int c = 0; c < d_; ++c) {
          double diff = w * (a[c] - b[c]);
          ga[c] += diff;
          gb[c] -= diff;
        }
      }
    }
    st.pair_sum = pair_sum;
    st.merit = pair_sum * int_scale_;

    // Per-vertex orthogonality (augmented Lagrangian).
    double orth_max = 0.0;
    std::size_t lam_idx = 0;
    for (int u = 0; u < n_; ++u) {
      for (int i = 0; i < k_; ++i) {
        const double* a = row_ptr(x, u * k_ + i);
        for (int j = i + 1; j < k_; ++j, ++lam_idx) {
          const double* b = row_ptr(x, u * k_ + j);
          double c = 0.0;
          for (int t = 0; t < d_; ++t) c += a[t] * b[t];
          orth_max = std::max(orth_max, std::fabs(c));
          const double lam = orth_lambda_[lam_idx];
          st.merit += lam * c + 0.5 * mu_orth_ * c * c;
          if (grad) {
            double coef = lam + mu_orth_ * c;
            double* ga = row_ptr(*grad, u * k_ + i);
            double* gb = row_ptr(*grad, u * k_ + j);
            for (int t = 0; t < d_; ++t) {
              ga[t] += coef * b[t];
              gb[t] += coef * a[t];
            }
          }
        }
      }
    }
    st.orth_max = orth_max;

    // Nonnegativity hinge penalties on the active set.
    double nn_viol = 0.0;
    for (const auto& pc : nn_active_) {
      const double* a = row_ptr(x, pc.p);
      const double* b = row_ptr(x, pc.q);
      double c = 0.0;
      for (int t = 0; t < d_; ++t) c += a[t] * b[t];
      if (c < 0.0) {
        nn_viol = std::max(nn_viol, -c);
        st.merit += 0.5 * mu_nn_ * c * c;
        if (grad) {
          double coef = mu_nn_ * c;
          double* ga = row_ptr(*grad, pc.p);
          double* gb = row_ptr(*grad, pc.q);
          for (int t = 0; t < d_; ++t) {
            ga[t] += coef * b[t];
            gb[t] += coef * a[t];
          }
        }
      }
    }
    st.active_nn_viol = nn_viol;

    // Edge-local triangle hinge penalties on the active set (crude flavor).
    double tri_viol = 0.0;
    for (const auto& tc : tri_active_) {
      const double* a = row_ptr(x, tc.p);
      const double* a2 = row_ptr(x, tc.p2);
      const double* b = row_ptr(x, tc.q);
      double g = -1.0;
      for (int t = 0; t < d_; ++t) g += (a[t] + a2[t]) * b[t];
      if (g > 0.0) {
        tri_viol = std::max(tri_viol, g);
        st.merit += 0.5 * mu_tri_ * g * g;
        if (grad) {
          double coef = mu_tri_ * g;
          double* ga = row_ptr(*grad, tc.p);
          double* ga2 = row_ptr(*grad, tc.p2);
          double* gb = row_ptr(*grad, tc.q);
          for (int t = 0; t < d_; ++t) {
            ga[t] += coef * b[t];
            ga2[t] += coef * b[t];
            gb[t] += coef * (a[t] + a2[t]);
          }
        }
      }
    }
    st.active_tri_viol = tri_viol;
    return st;
  }

  // Rebuilds the per-vertex index of active hinge constraints; called after
  // every separation pass.
  void rebuild_vertex_constraints() {
    nn_by_vertex_.assign(static_cast<std::size_t>(n_), {});
    tri_by_vertex_.assign(static_cast<std::size_t>(n_), {});
    for (std::size_t t = 0; t < nn_active_.size(); ++t) {
      nn_by_vertex_[static_cast<std::size_t>(nn_active_[t].p / k_)].push_back(
          static_cast<int>(t));
      nn_by_vertex_[static_cast<std::size_t>(nn_active_[t].q / k_)].push_back(
          static_cast<int>(t));
    }
    for (std::size_t t = 0; t < tri_active_.size(); ++t) {
      tri_by_vertex_[static_cast<std::size_t>(tri_active_[t].p / k_)].push_back(
          static_cast<int>(t));
      int qv = tri_active_[t].q / k_;
      if (qv != tri_active_[t].p / k_)
        tri_by_vertex_[static_cast<std::size_t>(qv)].push_back(
            static_cast<int>(t));
    }
  }

  // Merit terms that involve vertex u's block (objective edges at u, active
  // hinges touching u, orthogonality AL terms of block u).
  double local_merit(const std::vector<double>& x, int u) const {
    double val = 0.0;
    const int base = u * k_;
    for (const auto& inc : incident_[static_cast<std::size_t>(u)]) {
      for (int i = 0; i < k_; ++i) {
        const double* a = row_ptr(x, base + i);
        const double* b = row_ptr(x, inc.other * k_ + inc.map[i]);
        double s = 0.0;
        for (int c = 0; c < d_; ++c) {
          double diff = a[c] - b[c];
          s += diff * diff;
        }
        val += s * int_scale_;
      }
    }
    std::size_t lam_base = static_cast<std::size_t>(u) * orth_pairs_per_vertex_;
    std::size_t idx = 0;
    for (int i = 0; i < k_; ++i) {
      const double* a = row_ptr(x, base + i);
      for (int j = i + 1; j < k_; ++j, ++idx) {
        const double* b = row_ptr(x, base + j);
        double c = 0.0;
        for (int t = 0; t < d_; ++t) c += a[t] * b[t];
        val += orth_lambda_[lam_base + idx] * c + 0.5 * mu_orth_ * c * c;
      }
    }
    for (int t : nn_by_vertex_[static_cast<std::size_t>(u)]) {
      const auto& pc = nn_active_[static_cast<std::size_t>(t)];
      double c = 0.0;
      const double* a = row_ptr(x, pc.p);
      const double* b = row_ptr(x, pc.q);
      for (int s = 0; s < d_; ++s) c += a[s] * b[s];
      if (c < 0.0) val += 0.5 * mu_nn_ * c * c;
    }
    for (int t : tri_by_vertex_[static_cast<std::size_t>(u)]) {
      const auto& tc = tri_active_[static_cast<std::size_t>(t)];
      const double* a = row_ptr(x, tc.p);
      const double* a2 = row_ptr(x, tc.p2);
      const double* b = row_ptr(x, tc.q);
      double g = -1.0;
      for (int s = 0; s < d_; ++s) g += (a[s] + a2[s]) * b[s];
      if (g > 0.0) val += 0.5 * mu_tri_ * g * g;
    }
    return val;
  }

  // Polar factor with orthonormal rows: maximizes sum_i <q_i, m_i> over
  // orthonormal systems. Rank-deficient rows are completed deterministically.
  void polar_rows(const std::vector<double>& m, std::vector<double>& q) {
    std::vector<double> gram(static_cast<std::size_t>(k_) * k_, 0.0);
    for (int i = 0; i < k_; ++i)
      for (int j = i; j < k_; ++j) {
        double s = 0.0;
        for (int c = 0; c < d_; ++c)
          s += m[static_cast<std::size_t>(i) * d_ + c] *
               m[static_cast<std::size_t>(j) * d_ + c];
        gram[static_cast<std::size_t>(i) * k_ + j] = s;
        gram[static_cast<std::size_t>(j) * k_ + i] = s;
      }
    std::vector<double> eval, pv;
    jacobi_eigen(gram, k_, eval, pv);
    double emax = 0.0;
    for (double e : eval) emax = std::max(emax, e);
    const double floor_val = std::max(emax, 1.0) * 1e-13;
    // inv_sqrt = P^T diag(1/sqrt(max(eval,floor))) P, rows of pv are eigvecs.
    std::vector<double> isq(static_cast<std::size_t>(k_) * k_, 0.0);
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) {
        double s = 0.0;
        for (int t = 0; t < k_; ++t)
          s += pv[static_cast<std::size_t>(t) * k_ + i] *
               pv[static_cast<std::size_t>(t) * k_ + j] /
               std::sqrt(std::max(eval[static_cast<std::size_t>(t)], floor_val));
        isq[static_cast<std::size_t>(i) * k_ + j] = s;
      }
    q.assign(static_cast<std::size_t>(k_) * d_, 0.0);
    for (int i = 0; i < k_; ++i)
      for (int t = 0; t < k_; ++t) {
        double w = isq[static_cast<std::size_t>(i) * k_ + t];
        if (w == 0.0) continue;
        const double* mrow = m.data() + static_cast<std::size_t>(t) * d_;
        double* qrow = q.data() + static_cast<std::size_t>(i) * d_;
        for (int c = 0; c < d_; ++c) qrow[c] += w * mrow[c];
      }
    // Gram-Schmidt cleanup: near-singular directions come out short.
    for (int i = 0; i < k_; ++i) {
      double* qi = q.data() + static_cast<std::size_t>(i) * d_;
      for (int j = 0; j < i; ++j) {
        const double* qj = q.data() + static_cast<std::size_t>(j) * d_;
        double s = 0.0;
        for (int c = 0; c < d_; ++c) s += qi[c] * qj[c];
        for (int c = 0; c < d_; ++c) qi[c] -= s * qj[c];
      }
      double norm2 = 0.0;
      for (int c = 0; c < d_; ++c) norm2 += qi[c] * qi[c];
      if (norm2 < 1e-12) {
        // Complete with the first coordinate vector orthogonal to the rest.
        for (int cand = 0; cand < d_; ++cand) {
          std::fill(qi, qi + d_, 0.0);
          qi[cand] = 1.0;
          for (int j = 0; j < i; ++j) {
            const double* qj = q.data() + static_cast<std::size_t>(j) * d_;
            double s = 0.0;
            for (int c = 0; c < d_; ++c) s += qi[c] * qj[c];
            for (int c = 0; c < d_; ++c) qi[c] -= s * qj[c];
          }
          norm2 = 0.0;
          for (int c = 0; c < d_; ++c) norm2 += qi[c] * qi[c];
          if (norm2 > 0.5) break;
        }
      }
      double inv = 1.0 / std::sqrt(norm2);
      for (int c = 0; c < d_; ++c) qi[c] *= inv;
    }
  }

  // One sweep of exact block-coordinate minimization over vertices. The
  // per-vertex subproblem maximizes sum_i <u_i, b_i> over orthogonal systems
  // (unit rows for the crude/shift programs, free simplex weights for the
  // standard one); active hinge terms enter through their linearization and
  // a local-merit acceptance test keeps the sweep monotone.
  double bcd_sweep(std::vector<double>& x) {
    std::vector<double> bmat(static_cast<std::size_t>(k_) * d_);
    std::vector<double> scratch(static_cast<std::size_t>(k_) * d_);
    std::vector<double> qmat, old_block(static_cast<std::size_t>(k_) * d_);
    double total_gain = 0.0;
    for (int u = 0; u < n_; ++u) {
      if (incident_[static_cast<std::size_t>(u)].empty() &&
          nn_by_vertex_[static_cast<std::size_t>(u)].empty() &&
          tri_by_vertex_[static_cast<std::size_t>(u)].empty())
        continue;
      const int base = u * k_;
      std::fill(bmat.begin(), bmat.end(), 0.0);
      for (const auto& inc : incident_[static_cast<std::size_t>(u)]) {
        for (int i = 0; i < k_; ++i) {
          const double* nb = row_ptr(x, inc.other * k_ + inc.map[i]);
          double* bi = bmat.data() + static_cast<std::size_t>(i) * d_;
          for (int c = 0; c < d_; ++c) bi[c] += int_scale_ * nb[c];
        }
      }
      // Linearized hinge contributions at the current point.
      for (int t : nn_by_vertex_[static_cast<std::size_t>(u)]) {
        const auto& pc = nn_active_[static_cast<std::size_t>(t)];
        int mine = pc.p / k_ == u ? pc.p : pc.q;
        int other = pc.p / k_ == u ? pc.q : pc.p;
        const double* a = row_ptr(x, mine);
        const double* b = row_ptr(x, other);
        double c = 0.0;
        for (int s = 0; s < d_; ++s) c += a[s] * b[s];
        if (c < 0.0) {
          double w = -0.5 * mu_nn_ * c;
          double* bi = bmat.data() + static_cast<std::size_t>(mine - base) * d_;
          for (int s = 0; s < d_; ++s) bi[s] += w * b[s];
        }
      }
      for (int t : tri_by_vertex_[static_cast<std::size_t>(u)]) {
        const auto& tc = tri_active_[static_cast<std::size_t>(t)];
        const double* a = row_ptr(x, tc.p);
        const double* a2 = row_ptr(x, tc.p2);
        const double* b = row_ptr(x, tc.q);
        double g = -1.0;
        for (int s = 0; s < d_; ++s) g += (a[s] + a2[s]) * b[s];
        if (g <= 0.0) continue;
        double w = -0.5 * mu_tri_ * g;
        if (tc.p / k_ == u) {
          double* bp = bmat.data() + static_cast<std::size_t>(tc.p - base) * d_;
          double* bp2 = bmat.data() + static_cast<std::size_t>(tc.p2 - base) * d_;
          for (int s = 0; s < d_; ++s) {
            bp[s] += w * b[s];
            bp2[s] += w * b[s];
          }
        }
        if (tc.q / k_ == u) {
          double* bq = bmat.data() + static_cast<std::size_t>(tc.q - base) * d_;
          for (int s = 0; s < d_; ++s) bq[s] += w * (a[s] + a2[s]);
        }
      }

      double before = local_merit(x, u);
      std::copy(x.begin() + static_cast<std::size_t>(base) * d_,
                x.begin() + static_cast<std::size_t>(base + k_) * d_,
                old_block.begin());

      if (flavor_ == SdpFlavor::Standard) {
        // Alternate orthonormal directions (polar) with simplex weights.
        polar_rows(bmat, qmat);
        std::vector<double> p(static_cast<std::size_t>(k_));
        for (int round = 0; round < 3; ++round) {
          double csum = 0.0;
          for (int i = 0; i < k_; ++i) {
            double c = 0.0;
            for (int s = 0; s < d_; ++s)
              c += qmat[static_cast<std::size_t>(i) * d_ + s] *
                   bmat[static_cast<std::size_t>(i) * d_ + s];
            c = std::max(c, 0.0);
            p[static_cast<std::size_t>(i)] = c * c;
            csum += c * c;
          }
          if (csum < 1e-300) {
            p.assign(static_cast<std::size_t>(k_), 1.0 / k_);
          } else {
            for (auto& pi : p) pi /= csum;
          }
          if (round == 2) break;
          for (int i = 0; i < k_; ++i) {
            double w = std::sqrt(p[static_cast<std::size_t>(i)]);
            for (int s = 0; s < d_; ++s)
              scratch[static_cast<std::size_t>(i) * d_ + s] =
                  w * bmat[static_cast<std::size_t>(i) * d_ + s];
          }
          polar_rows(scratch, qmat);
        }
        for (int i = 0; i < k_; ++i) {
          double w = std::sqrt(p[static_cast<std::size_t>(i)]);
          double* xi = row_ptr(x, base + i);
          for (int s = 0; s < d_; ++s)
            xi[s] = w * qmat[static_cast<std::size_t>(i) * d_ + s];
        }
      } else {
        // Unit orthonormal rows: plain Procrustes.
        polar_rows(bmat, qmat);
        std::copy(qmat.begin(), qmat.end(),
                  x.begin() + static_cast<std::size_t>(base) * d_);
      }

      double after = local_merit(x, u);
      if (after <= before + 1e-14) {
        total_gain += before - after;
      } else {
        ++bcd_rejects_;
        std::copy(old_block.begin(), old_block.end(),
                  x.begin() + static_cast<std::size_t>(base) * d_);
      }
    }
    return total_gain;
  }

  void update_multipliers(const Stats& st) {
    std::size_t lam_idx = 0;
    for (int u = 0; u < n_; ++u) {
      for (int i = 0; i < k_; ++i) {
        const double* a = row_ptr(v_, u * k_ + i);
        for (int j = i + 1; j < k_; ++j, ++lam_idx) {
          const double* b = row_ptr(v_, u * k_ + j);
          double c = 0.0;
          for (int t = 0; t < d_; ++t) c += a[t] * b[t];
          orth_lambda_[lam_idx] += mu_orth_ * c;
        }
      }
    }
    // Raise a penalty weight only when its family genuinely violates the
    // tolerance and multiplier updates alone are not closing the gap;
    // needless growth stiffens the landscape and slows descent badly.
    const double mu_cap = cfg_.penalty.mu_max * pen_unit_;
    if (st.orth_max > cfg_.tol_feas && st.orth_max > 0.25 * prev_orth_max_)
      mu_orth_ = std::min(mu_orth_ * cfg_.penalty.mu_growth, mu_cap);
    prev_orth_max_ = st.orth_max;
    if (std::max(st.active_nn_viol, scan_nn_viol_) > cfg_.tol_feas)
      mu_nn_ = std::min(mu_nn_ * cfg_.penalty.mu_growth, mu_cap);
    if (std::max(st.active_tri_viol, scan_tri_viol_) > cfg_.tol_feas)
      mu_tri_ = std::min(mu_tri_ * cfg_.penalty.mu_growth, mu_cap);
  }

  // Scans the lazily handled families and activates violated constraints.
  // Returns the number of newly activated constraints.
  int separation_pass(const std::vector<double>& x) {
    int added = 0;
    std::vector<double> gram(static_cast<std::size_t>(k_) * k_);
    const int m = inst_.edge_count();
    for (int e = 0; e < m && added < cfg_.lazy_batch; ++e) {
      const auto& ed = inst_.edges[static_cast<std::size_t>(e)];
      for (int i = 0; i < k_; ++i) {
        const double* a = row_ptr(x, ed.u * k_ + i);
        for (int j = 0; j < k_; ++j) {
          const double* b = row_ptr(x, ed.v * k_ + j);
          double c = 0.0;
          for (int t = 0; t < d_; ++t) c += a[t] * b[t];
          gram[static_cast<std::size_t>(i) * k_ + j] = c;
        }
      }
      if (flavor_ == SdpFlavor::Crude) {
        added += separate_edge_triangles(ed, gram);
      } else {
        added += separate_edge_nonneg(ed, gram);
      }
    }
    if (flavor_ != SdpFlavor::Crude) added += sample_nonneg_pairs(x);
    if (flavor_ == SdpFlavor::Standard && cfg_.triangle == TriangleMode::Lazy)
      added += sample_vertex_triangles(x);
    return added;
  }

  int separate_edge_triangles(const ConstraintEdge& ed,
                              const std::vector<double>& gram) {
    int added = 0;
    // Direction 1: two labels of u against one label of v.
    for (int j = 0; j < k_; ++j) {
      int top1 = -1, top2 = -1;
      for (int i = 0; i < k_; ++i) {
        double c = gram[static_cast<std::size_t>(i) * k_ + j];
        if (top1 < 0 || c > gram[static_cast<std::size_t>(top1) * k_ + j]) {
          top2 = top1;
          top1 = i;
        } else if (top2 < 0 || c > gram[static_cast<std::size_t>(top2) * k_ + j]) {
          top2 = i;
        }
      }
      double sum = gram[static_cast<std::size_t>(top1) * k_ + j] +
                   gram[static_cast<std::size_t>(top2) * k_ + j];
      if (sum > 1.0) {
        TriangleConstraint tc{ed.u * k_ + top1, ed.u * k_ + top2, ed.v * k_ + j};
        if (tri_seen_.insert(triple_key(tc.p, tc.p2, tc.q)).second) {
          tri_active_.push_back(tc);
          ++added;
        }
      }
    }
    // Direction 2: two labels of v against one label of u.
    for (int i = 0; i < k_; ++i) {
      int top1 = -1, top2 = -1;
      for (int j = 0; j < k_; ++j) {
        double c = gram[static_cast<std::size_t>(i) * k_ + j];
        if (top1 < 0 || c > gram[static_cast<std::size_t>(i) * k_ + top1]) {
          top2 = top1;
          top1 = j;
        } else if (top2 < 0 || c > gram[static_cast<std::size_t>(i) * k_ + top2]) {
          top2 = j;
        }
      }
      double sum = gram[static_cast<std::size_t>(i) * k_ + top1] +
                   gram[static_cast<std::size_t>(i) * k_ + top2];
      if (sum > 1.0) {
        TriangleConstraint tc{ed.v * k_ + top1, ed.v * k_ + top2, ed.u * k_ + i};
        if (tri_seen_.insert(triple_key(tc.p, tc.p2, tc.q)).second) {
          tri_active_.push_back(tc);
          ++added;
        }
      }
    }
    return added;
  }

  int separate_edge_nonneg(const ConstraintEdge& ed,
                           const std::vector<double>& gram) {
    int added = 0;
    for (int i = 0; i < k_; ++i) {
      for (int j = 0; j < k_; ++j) {
        if (gram[static_cast<std::size_t>(i) * k_ + j] < 0.0) {
          PairConstraint pc{ed.u * k_ + i, ed.v * k_ + j};
          if (nn_seen_.insert(pair_key(pc.p, pc.q)).second) {
            nn_active_.push_back(pc);
            ++added;
          }
        }
      }
    }
    return added;
  }

  int sample_nonneg_pairs(const std::vector<double>& x) {
    if (n_ < 2) return 0;
    int added = 0;
    for (int s = 0; s < cfg_.nonneg_samples; ++s) {
      int u = rng_.uniform_int(n_);
      int v = rng_.uniform_int(n_);
      if (u == v) continue;
      int p = u * k_ + rng_.uniform_int(k_);
      int q = v * k_ + rng_.uniform_int(k_);
      const double* a = row_ptr(x, p);
      const double* b = row_ptr(x, q);
      double c = 0.0;
      for (int t = 0; t < d_; ++t) c += a[t] * b[t];
      if (c < 0.0 && nn_seen_.insert(pair_key(p, q)).second) {
        nn_active_.push_back({p, q});
        ++added;
      }
    }
    return added;
  }

  int sample_vertex_triangles(const std::vector<double>& x) {
    int added = 0;
    for (int s = 0; s < cfg_.lazy_batch; ++s) {
      int p = rng_.uniform_int(rows_);
      int q = rng_.uniform_int(rows_);
      int r = rng_.uniform_int(rows_);
      if (p == q || q == r || p == r) continue;
      const double* a = row_ptr(x, p);
      const double* b = row_ptr(x, q);
      const double* c = row_ptr(x, r);
      double uv = 0.0, uw = 0.0, wv = 0.0;
      for (int t = 0; t < d_; ++t) {
        double ab = a[t] - b[t], ac = a[t] - c[t], cb = c[t] - b[t];
        uv += ab * ab;
        uw += ac * ac;
        wv += cb * cb;
      }
      if (uv > uw + wv && vtri_seen_.insert(triple_key(p, r, q)).second) {
        vtri_active_.push_back({p, q, r});
        ++added;
      }
    }
    return added;
  }

  // Full monitored-set scan for the quick feasibility proxy; stores maxima.
  void full_scan(const std::vector<double>& x) {
    double nn = 0.0, tri = 0.0;
    std::vector<double> gram(static_cast<std::size_t>(k_) * k_);
    for (const auto& ed : inst_.edges) {
      for (int i = 0; i < k_; ++i) {
        const double* a = row_ptr(x, ed.u * k_ + i);
        for (int j = 0; j < k_; ++j) {
          const double* b = row_ptr(x, ed.v * k_ + j);
          double c = 0.0;
          for (int t = 0; t < d_; ++t) c += a[t] * b[t];
          gram[static_cast<std::size_t>(i) * k_ + j] = c;
        }
      }
      if (flavor_ == SdpFlavor::Crude) {
        for (int j = 0; j < k_; ++j) {
          double t1 = -std::numeric_limits<double>::infinity(), t2 = t1;
          for (int i = 0; i < k_; ++i) {
            double c = gram[static_cast<std::size_t>(i) * k_ + j];
            if (c > t1) {
              t2 = t1;
              t1 = c;
            } else if (c > t2) {
              t2 = c;
            }
          }
          tri = std::max(tri, t1 + t2 - 1.0);
        }
        for (int i = 0; i < k_; ++i) {
          double t1 = -std::numeric_limits<double>::infinity(), t2 = t1;
          for (int j = 0; j < k_; ++j) {
            double c = gram[static_cast<std::size_t>(i) * k_ + j];
            if (c > t1) {
              t2 = t1;
              t1 = c;
            } else if (c > t2) {
              t2 = c;
            }
          }
          tri = std::max(tri, t1 + t2 - 1.0);
        }
      } else {
        for (double c : gram) nn = std::max(nn, -c);
      }
    }
    scan_nn_viol_ = flavor_ == SdpFlavor::Crude ? 0.0 : nn;
    scan_tri_viol_ = flavor_ == SdpFlavor::Crude ? std::max(tri, 0.0) : 0.0;
  }

  double reported_objective(const std::vector<double>& x) const {
    double pair_sum = 0.0;
    for (const auto& pc : matched_) {
      const double* a = row_ptr(x, pc.p);
      const double* b = row_ptr(x, pc.q);
      for (int c = 0; c < d_; ++c) {
        double diff = a[c] - b[c];
        pair_sum += diff * diff;
      }
    }
    return pair_sum * rep_scale_;
  }

  ResidualReport final_residuals(const std::vector<double>& x) {
    ResidualReport rep;
    // Norm family.
    double norm_dev = 0.0;
    if (flavor_ == SdpFlavor::Standard) {
      for (int u = 0; u < n_; ++u) {
        double total = 0.0;
        const double* base = x.data() + static_cast<std::size_t>(u) * k_ * d_;
        for (int t = 0; t < k_ * d_; ++t) total += base[t] * base[t];
        norm_dev = std::max(norm_dev, std::fabs(total - 1.0));
      }
    } else {
      for (int p = 0; p < rows_; ++p) {
        const double* row = row_ptr(x, p);
        double norm2 = 0.0;
        for (int c = 0; c < d_; ++c) norm2 += row[c] * row[c];
        norm_dev = std::max(norm_dev, std::fabs(norm2 - 1.0));
      }
    }
    rep.max_norm_dev = norm_dev;

    double orth = 0.0;
    for (int u = 0; u < n_; ++u) {
      for (int i = 0; i < k_; ++i) {
        const double* a = row_ptr(x, u * k_ + i);
        for (int j = i + 1; j < k_; ++j) {
          const double* b = row_ptr(x, u * k_ + j);
          double c = 0.0;
          for (int t = 0; t < d_; ++t) c += a[t] * b[t];
          orth = std::max(orth, std::fabs(c));
        }
      }
    }
    rep.max_orth = orth;

    full_scan(x);
    if (flavor_ == SdpFlavor::Crude) {
      rep.max_nonneg_violation = kNaN;
      rep.max_triangle_violation = scan_tri_viol_;
    } else {
      // Edge-incident scan plus a fresh random sample.
      double nn = scan_nn_viol_;
      Rng sampler(derive_seed(cfg_.seed, 0x6e6e /* "nn" */));
      for (int s = 0; s < cfg_.nonneg_samples && n_ >= 2; ++s) {
        int u = sampler.uniform_int(n_);
        int v = sampler.uniform_int(n_);
        if (u == v) continue;
        const double* a = row_ptr(x, u * k_ + sampler.uniform_int(k_));
        const double* b = row_ptr(x, v * k_ + sampler.uniform_int(k_));
        double c = 0.0;
        for (int t = 0; t < d_; ++t) c += a[t] * b[t];
        nn = std::max(nn, -c);
      }
      rep.max_nonneg_violation = std::max(nn, 0.0);
      rep.max_triangle_violation =
          (flavor_ == SdpFlavor::Standard && cfg_.triangle == TriangleMode::Lazy)
              ? vtri_max_violation(x)
              : kNaN;
    }
    return rep;
  }

  double vtri_max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (const auto& tc : vtri_active_) {
      const double* a = row_ptr(x, tc.p);
      const double* b = row_ptr(x, tc.q);
      const double* c = row_ptr(x, tc.q2());
      double uv = 0.0, uw = 0.0, wv = 0.0;
      for (int t = 0; t < d_; ++t) {
        double ab = a[t] - b[t], ac = a[t] - c[t], cb = c[t] - b[t];
        uv += ab * ab;
        uw += ac * ac;
        wv += cb * cb;
      }
      worst = std::max(worst, uv - uw - wv);
    }
    return worst;
  }

  bool trace_ = std::getenv("UG_SDP_TRACE") != nullptr;
  const UGInstance& inst_;
  const SdpConfig& cfg_;
  SdpFlavor flavor_;
  Rng rng_;
  int n_ = 0, k_ = 0, d_ = 0, rows_ = 0;
  double int_scale_ = 0.0, rep_scale_ = 0.0;
  std::vector<PairConstraint> matched_;

  struct Incident {
    int other;       // neighbor vertex
    const int* map;  // our label i -> neighbor label
  };
  std::vector<std::vector<Incident>> incident_;
  std::vector<std::vector<int>> inv_perms_;
  std::vector<std::vector<int>> nn_by_vertex_, tri_by_vertex_;
  long bcd_rejects_ = 0;

  std::vector<double> v_, grad_;
  std::vector<double> orth_lambda_;
  int orth_pairs_per_vertex_ = 0;
  double pen_unit_ = 1.0;
  double mu_orth_ = 1.0, mu_nn_ = 1.0, mu_tri_ = 1.0;
  double prev_orth_max_ = std::numeric_limits<double>::infinity();
  double scan_nn_viol_ = 0.0, scan_tri_viol_ = 0.0;

  std::vector<PairConstraint> nn_active_;
  std::unordered_set<std::uint64_t> nn_seen_;
  std::vector<TriangleConstraint> tri_active_;
  std::unordered_set<std::uint64_t> tri_seen_;
  struct VertexTriangle {
    int p, q, r;
    int q2() const { return r; }
  };
  std::vector<VertexTriangle> vtri_active_;
  std::unordered_set<std::uint64_t> vtri_seen_;
};

void require_linear(const UGInstance& inst, const char* what) {
  if (!inst.is_linear)
    throw std::invalid_argument(std::string(what) + ": instance is not linear");
}

}  // namespace

int SdpConfig::resolved_dim(int n, int k) const {
  const int rows = n * k;
  int d = dim;
  if (d <= 0) {
    d = static_cast<int>(std::ceil(std::sqrt(2.0 * rows)));
    d = std::max(d, k + 1);
  }
  d = std::max(2, std::min(d, rows));
  return d;
}

SolveResult solve_standard(const UGInstance& inst, const SdpConfig& cfg) {
  inst.validate();
  FirstOrderSolver solver(inst, cfg, SdpFlavor::Standard);
  return solver.run();
}

SolveResult solve_crude(const UGInstance& inst, const SdpConfig& cfg) {
  inst.validate();
  FirstOrderSolver solver(inst, cfg, SdpFlavor::Crude);
  return solver.run();
}

SolveResult solve_shift_invariant(const UGInstance& inst, const SdpConfig& cfg) {
  inst.validate();
  require_linear(inst, "solve_shift_invariant");
  FirstOrderSolver solver(inst, cfg, SdpFlavor::ShiftInvariant);
  SolveResult res = solver.run();
  res.sol = symmetrize(res.sol, inst);
  return res;
}

VectorSolution symmetrize(const VectorSolution& sol, const UGInstance& inst) {
  require_linear(inst, "symmetrize");
  if (sol.n != inst.n || sol.k != inst.k)
    throw std::invalid_argument("symmetrize: solution does not match instance");
  const int k = sol.k, d = sol.d;
  VectorSolution out;
  out.flavor = SdpFlavor::ShiftInvariant;
  out.n = sol.n;
  out.k = k;
  out.d = k * d;
  out.data.assign(static_cast<std::size_t>(out.rows()) * out.d, 0.0);
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(k));
  for (int u = 0; u < sol.n; ++u) {
    for (int i = 0; i < k; ++i) {
      double* dst = out.data.data() +
                    (static_cast<std::size_t>(u) * k + i) * out.d;
      for (int j = 0; j < k; ++j) {
        auto src = sol.vec(u, (i + j) % k);
        double* block = dst + static_cast<std::size_t>(j) * d;
        for (int c = 0; c < d; ++c) block[c] = src[c] * inv_sqrt_k;
      }
    }
  }
  return out;
}

double super_short_threshold(double eta, double cstar, double k) {
  if (k < 2.0)
    throw std::invalid_argument("super_short_threshold: k must be at least 2");
  return cstar * eta * eta / std::log(k);
}

SuperShortSet super_short_edges(const VectorSolution& sol, const UGInstance& inst,
                                double eta, double cstar) {
  if (sol.flavor != SdpFlavor::Crude)
    throw std::invalid_argument("super_short_edges: solution must be crude");
  if (sol.n != inst.n || sol.k != inst.k)
    throw std::invalid_argument("super_short_edges: solution/instance mismatch");
  SuperShortSet out;
  out.eta = eta;
  out.cstar = cstar;
  out.threshold = super_short_threshold(eta, cstar, inst.k);
  for (int e = 0; e < inst.edge_count(); ++e) {
    const auto& ed = inst.edges[static_cast<std::size_t>(e)];
    for (int i = 0; i < inst.k; ++i) {
      double len =
          sqdist(sol.vec(ed.u, i), sol.vec(ed.v, ed.perm[static_cast<std::size_t>(i)]));
      if (len <= out.threshold) out.edges.push_back({e, i});
    }
  }
  return out;
}

int layer_restriction_count(const SuperShortSet& gamma, const UGInstance& inst,
                            const Labeling& layer) {
  if (layer.size() != inst.n)
    throw std::invalid_argument("layer_restriction_count: labeling mismatch");
  int count = 0;
  for (const auto& en : gamma.edges) {
    const auto& ed = inst.edges[static_cast<std::size_t>(en.edge)];
    if (layer.x[static_cast<std::size_t>(ed.u)] == en.label &&
        layer.x[static_cast<std::size_t>(ed.v)] ==
            ed.perm[static_cast<std::size_t>(en.label)])
      ++count;
  }
  return count;
}

EdgePartition classify_long_edges(const VectorSolution& sol,
                                  const UGInstance& inst, double eta) {
  if (sol.n != inst.n || sol.k != inst.k)
    throw std::invalid_argument("classify_long_edges: solution/instance mismatch");
  EdgePartition part;
  part.eta = eta;
  if (sol.flavor == SdpFlavor::Standard) {
    for (int e = 0; e < inst.edge_count(); ++e) {
      if (edge_length(sol, inst, e) > eta)
        part.long_edges.push_back(e);
      else
        part.short_edges.push_back(e);
    }
  } else if (sol.flavor == SdpFlavor::ShiftInvariant) {
    require_linear(inst, "classify_long_edges");
    for (int e = 0; e < inst.edge_count(); ++e) {
      const auto& ed = inst.edges[static_cast<std::size_t>(e)];
      // Shift-invariant solutions make this identical for every i; use i=0.
      double len = 0.5 * sqdist(sol.vec(ed.u, 0), sol.vec(ed.v, ed.shift));
      if (len > eta)
        part.long_edges.push_back(e);
      else
        part.short_edges.push_back(e);
    }
  } else {
    throw std::invalid_argument(
        "classify_long_edges: solution must be standard or shift-invariant");
  }
  return part;
}

}  // namespace ug::sdp

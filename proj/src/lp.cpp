#include "ug/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace ug::lp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Max-flow (Dinic) with real capacities; used as the pricing oracle.
class Dinic {
 public:
  explicit Dinic(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

  void add_edge(int a, int b, double cap) {
    arcs_.push_back({b, head_[static_cast<std::size_t>(a)], cap});
    head_[static_cast<std::size_t>(a)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({a, head_[static_cast<std::size_t>(b)], 0.0});
    head_[static_cast<std::size_t>(b)] = static_cast<int>(arcs_.size()) - 1;
  }

  double max_flow(int s, int t) {
    double flow = 0.0;
    while (bfs(s, t)) {
      iter_ = head_;
      for (;;) {
        double pushed = dfs(s, t, kInf);
        if (pushed <= 0.0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  // After max_flow: nodes reachable from s in the residual graph.
  std::vector<char> min_cut_side(int s) const {
    std::vector<char> vis(head_.size(), 0);
    std::queue<int> q;
    q.push(s);
    vis[static_cast<std::size_t>(s)] = 1;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(a)]; e != -1;
           e = arcs_[static_cast<std::size_t>(e)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(e)];
        if (arc.cap > 1e-11 && !vis[static_cast<std::size_t>(arc.to)]) {
          vis[static_cast<std::size_t>(arc.to)] = 1;
          q.push(arc.to);
        }
      }
    }
    return vis;
  }

 private:
  struct Arc {
    int to;
    int next;
    double cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    std::queue<int> q;
    q.push(s);
    level_[static_cast<std::size_t>(s)] = 0;
    while (!q.empty()) {
      int a = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(a)]; e != -1;
           e = arcs_[static_cast<std::size_t>(e)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(e)];
        if (arc.cap > 1e-11 && level_[static_cast<std::size_t>(arc.to)] < 0) {
          level_[static_cast<std::size_t>(arc.to)] =
              level_[static_cast<std::size_t>(a)] + 1;
          q.push(arc.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  double dfs(int a, int t, double limit) {
    if (a == t) return limit;
    for (int& e = iter_[static_cast<std::size_t>(a)]; e != -1;
         e = arcs_[static_cast<std::size_t>(e)].next) {
      Arc& arc = arcs_[static_cast<std::size_t>(e)];
      if (arc.cap > 1e-11 &&
          level_[static_cast<std::size_t>(arc.to)] ==
              level_[static_cast<std::size_t>(a)] + 1) {
        double pushed = dfs(arc.to, t, std::min(limit, arc.cap));
        if (pushed > 0.0) {
          arc.cap -= pushed;
          arcs_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
          return pushed;
        }
      }
    }
    return 0.0;
  }

  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
  std::vector<Arc> arcs_;
};

// Dense primal simplex for the restricted master:
//   max sum_j c_j lambda_j  s.t.  A lambda <= 1,  lambda >= 0.
// Keeps the full tableau across column additions so each pricing round only
// needs a handful of warm-started pivots.
class MasterSimplex {
 public:
  explicit MasterSimplex(int rows) : m_(rows) {
    // Layout: structural columns [0..N), slacks [N..N+m), rhs last.
    cols_ = 0;
    tab_.assign(static_cast<std::size_t>(m_ + 1), {});
    for (int i = 0; i <= m_; ++i)
      tab_[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(m_) + 1, 0.0);
    basis_.resize(static_cast<std::size_t>(m_));
    for (int i = 0; i < m_; ++i) {
      tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;  // slack
      tab_[static_cast<std::size_t>(i)].back() = 1.0;                        // rhs
      basis_[static_cast<std::size_t>(i)] = i;  // slack ids occupy [0..m) initially
    }
  }

  // Adds a structural column with objective c and sparse entries
  // (row, coefficient); returns its column id.
  int add_column(double c, const std::vector<std::pair<int, double>>& entries) {
    // Represent the new column in the current basis: rep = B^-1 a. The slack
    // block of the tableau is exactly B^-1 because slacks started as I.
    std::vector<double> rep(static_cast<std::size_t>(m_), 0.0);
    double red = -c;  // reduced cost in min form (we minimize -c)
    for (int i = 0; i < m_; ++i) {
      double s = 0.0;
      for (const auto& [r, a] : entries)
        s += slack_entry(i, r) * a;
      rep[static_cast<std::size_t>(i)] = s;
    }
    for (const auto& [r, a] : entries) red += obj_slack_entry(r) * a;

    const int id = cols_++;
    col_ids_.push_back(id);
    // Insert the column just before the slack block.
    for (int i = 0; i < m_; ++i)
      tab_[static_cast<std::size_t>(i)].insert(
          tab_[static_cast<std::size_t>(i)].begin() + id,
          rep[static_cast<std::size_t>(i)]);
    tab_[static_cast<std::size_t>(m_)].insert(
        tab_[static_cast<std::size_t>(m_)].begin() + id, red);
    // Slack ids shift right by one.
    for (auto& b : basis_)
      if (b >= id) ++b;
    return id;
  }

  // Primal simplex to optimality (min form internally).
  void optimize() {
    const int total = cols_ + m_;
    int degenerate_streak = 0;
    for (int iter = 0; iter < 200000; ++iter) {
      auto& obj = tab_[static_cast<std::size_t>(m_)];
      int enter = -1;
      if (degenerate_streak < 150) {
        double best = -1e-9;
        for (int j = 0; j < total; ++j)
          if (obj[static_cast<std::size_t>(j)] < best) {
            best = obj[static_cast<std::size_t>(j)];
            enter = j;
          }
      } else {
        // Bland's rule: smallest eligible index.
        for (int j = 0; j < total; ++j)
          if (obj[static_cast<std::size_t>(j)] < -1e-9) {
            enter = j;
            break;
          }
      }
      if (enter < 0) return;  // optimal

      int leave = -1;
      double best_ratio = kInf;
      for (int i = 0; i < m_; ++i) {
        double a = tab_[static_cast<std::size_t>(i)][static_cast<std::size_t>(enter)];
        if (a > 1e-9) {
          double ratio = tab_[static_cast<std::size_t>(i)].back() / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && leave >= 0 &&
               basis_[static_cast<std::size_t>(i)] <
                   basis_[static_cast<std::size_t>(leave)])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0)
        throw std::runtime_error("lp master: unbounded (should not happen)");
      if (best_ratio < 1e-12)
        ++degenerate_streak;
      else
        degenerate_streak = 0;
      pivot(leave, enter);
    }
    throw std::runtime_error("lp master: iteration limit");
  }

  double objective() const {
    return tab_[static_cast<std::size_t>(m_)].back();  // equals +max value
  }

  // Dual price of row r (>= 0 at optimality).
  double dual(int r) const { return obj_slack_entry(r); }

  // Value of structural column `id` in the current solution.
  double primal(int id) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[static_cast<std::size_t>(i)] == id)
        return tab_[static_cast<std::size_t>(i)].back();
    return 0.0;
  }

 private:
  double slack_entry(int row, int r) const {
    return tab_[static_cast<std::size_t>(row)][static_cast<std::size_t>(cols_ + r)];
  }
  double obj_slack_entry(int r) const {
    return tab_[static_cast<std::size_t>(m_)][static_cast<std::size_t>(cols_ + r)];
  }

  void pivot(int leave, int enter) {
    auto& prow = tab_[static_cast<std::size_t>(leave)];
    const double pval = prow[static_cast<std::size_t>(enter)];
    for (auto& x : prow) x /= pval;
    for (int i = 0; i <= m_; ++i) {
      if (i == leave) continue;
      auto& row = tab_[static_cast<std::size_t>(i)];
      double f = row[static_cast<std::size_t>(enter)];
      if (std::fabs(f) < 1e-13) continue;
      const std::size_t width = row.size();
      for (std::size_t j = 0; j < width; ++j) row[j] -= f * prow[j];
      row[static_cast<std::size_t>(enter)] = 0.0;
    }
    basis_[static_cast<std::size_t>(leave)] = enter;
  }

  int m_ = 0;
  int cols_ = 0;
  std::vector<std::vector<double>> tab_;
  std::vector<int> basis_;  // structural ids in [0,cols_), slacks in [cols_, cols_+m)
  std::vector<int> col_ids_;
};

}  // namespace

double lp_objective(const sdp::SuperShortSet& gamma, const UGInstance& inst,
                    const LPWeights& w) {
  double obj = 0.0;
  for (const auto& en : gamma.edges) {
    const auto& ed = inst.edges[static_cast<std::size_t>(en.edge)];
    obj += std::min(w.at(ed.u, en.label),
                    w.at(ed.v, ed.perm[static_cast<std::size_t>(en.label)]));
  }
  return obj;
}

LPWeights solve_lp(const sdp::SuperShortSet& gamma, const UGInstance& inst) {
  LPWeights w;
  w.n = inst.n;
  w.k = inst.k;
  w.x.assign(static_cast<std::size_t>(inst.n) * inst.k,
             1.0 / static_cast<double>(inst.k));
  w.objective = 0.0;
  if (gamma.edges.empty()) return w;

  // Label-extended nodes touched by Gamma, compressed.
  std::unordered_map<int, int> node_id;   // global node -> compressed id
  std::vector<int> node_of;               // compressed id -> global node
  auto intern = [&](int gnode) {
    auto [it, fresh] = node_id.emplace(gnode, static_cast<int>(node_of.size()));
    if (fresh) node_of.push_back(gnode);
    return it->second;
  };
  struct GEdge {
    int a, b;
  };
  std::vector<GEdge> gedges;
  gedges.reserve(gamma.edges.size());
  for (const auto& en : gamma.edges) {
    const auto& ed = inst.edges[static_cast<std::size_t>(en.edge)];
    int p = ed.u * inst.k + en.label;
    int q = ed.v * inst.k + ed.perm[static_cast<std::size_t>(en.label)];
    gedges.push_back({intern(p), intern(q)});
  }
  const int L = static_cast<int>(node_of.size());
  const int G = static_cast<int>(gedges.size());

  // Touched blocks (vertices) become master rows.
  std::unordered_map<int, int> row_of_vertex;
  std::vector<int> vertex_of_row;
  std::vector<int> block_row(static_cast<std::size_t>(L));
  for (int c = 0; c < L; ++c) {
    int u = node_of[static_cast<std::size_t>(c)] / inst.k;
    auto [it, fresh] =
        row_of_vertex.emplace(u, static_cast<int>(vertex_of_row.size()));
    if (fresh) vertex_of_row.push_back(u);
    block_row[static_cast<std::size_t>(c)] = it->second;
  }
  const int R = static_cast<int>(vertex_of_row.size());

  MasterSimplex master(R);
  std::vector<std::vector<int>> columns;  // compressed label nodes per column

  auto column_entries = [&](const std::vector<int>& members) {
    std::vector<std::pair<int, double>> entries;
    std::unordered_map<int, double> acc;
    for (int c : members) acc[block_row[static_cast<std::size_t>(c)]] += 1.0;
    entries.assign(acc.begin(), acc.end());
    std::sort(entries.begin(), entries.end());
    return entries;
  };
  auto column_value = [&](const std::vector<int>& members) {
    std::vector<char> in(static_cast<std::size_t>(L), 0);
    for (int c : members) in[static_cast<std::size_t>(c)] = 1;
    double e = 0.0;
    for (const auto& ge : gedges)
      if (in[static_cast<std::size_t>(ge.a)] && in[static_cast<std::size_t>(ge.b)])
        e += 1.0;
    return e;
  };

  const int max_rounds = 4000;
  std::set<std::vector<int>> column_signatures;
  for (int round = 0; round < max_rounds; ++round) {
    master.optimize();
    // Pricing: max_S e(S) - sum_{p in S} mu_block(p) via min cut.
    const int source = 0, sink = 1 + G + L;
    Dinic flow(sink + 1);
    for (int g = 0; g < G; ++g) {
      flow.add_edge(source, 1 + g, 1.0);
      flow.add_edge(1 + g, 1 + G + gedges[static_cast<std::size_t>(g)].a, kInf);
      flow.add_edge(1 + g, 1 + G + gedges[static_cast<std::size_t>(g)].b, kInf);
    }
    for (int c = 0; c < L; ++c)
      flow.add_edge(1 + G + c, sink,
                    std::max(0.0, master.dual(block_row[static_cast<std::size_t>(c)])));
    double fv = flow.max_flow(source, sink);
    double best_reduced = static_cast<double>(G) - fv;
    if (best_reduced <= 1e-9 * std::max(1.0, master.objective())) break;

    std::vector<char> side = flow.min_cut_side(source);
    std::vector<int> members;
    for (int c = 0; c < L; ++c)
      if (side[static_cast<std::size_t>(1 + G + c)]) members.push_back(c);
    if (members.empty()) break;
    if (!column_signatures.insert(members).second) break;  // numerical repeat
    double cval = column_value(members);
    master.add_column(cval, column_entries(members));
    columns.push_back(std::move(members));
  }
  master.optimize();

  // Aggregate lambda-weighted columns into per-node weights.
  std::vector<double> xw(static_cast<std::size_t>(L), 0.0);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    double lam = master.primal(static_cast<int>(j));
    if (lam <= 0.0) continue;
    for (int c : columns[j]) xw[static_cast<std::size_t>(c)] += lam;
  }
  // Install into the full weight table: touched vertices get the aggregated
  // mass plus a deterministic top-up; untouched vertices stay uniform.
  std::vector<double> block_total(static_cast<std::size_t>(inst.n), 0.0);
  std::vector<char> touched(static_cast<std::size_t>(inst.n), 0);
  for (int u : vertex_of_row) {
    touched[static_cast<std::size_t>(u)] = 1;
    for (int i = 0; i < inst.k; ++i) w.at(u, i) = 0.0;
  }
  for (int c = 0; c < L; ++c) {
    int gnode = node_of[static_cast<std::size_t>(c)];
    double m = std::clamp(xw[static_cast<std::size_t>(c)], 0.0, 1.0);
    w.x[static_cast<std::size_t>(gnode)] = m;
    block_total[static_cast<std::size_t>(gnode / inst.k)] += m;
  }
  for (int u = 0; u < inst.n; ++u) {
    if (!touched[static_cast<std::size_t>(u)]) continue;
    double deficit = 1.0 - block_total[static_cast<std::size_t>(u)];
    if (deficit > 0.0) {
      // Adding mass can only increase min-terms; give it to the heaviest label.
      int arg = 0;
      for (int i = 1; i < inst.k; ++i)
        if (w.at(u, i) > w.at(u, arg)) arg = i;
      w.at(u, arg) += deficit;
    }
    // Exact renormalization pass.
    double total = 0.0;
    for (int i = 0; i < inst.k; ++i) total += w.at(u, i);
    if (total > 0.0)
      for (int i = 0; i < inst.k; ++i) w.at(u, i) /= total;
  }
  w.objective = lp_objective(gamma, inst, w);
  return w;
}

}  // namespace ug::lp

#include "ug/oracle.hpp"

#include <stdexcept>
#include <string>

namespace ug::oracle {

namespace {

void check_size(int n, int k) {
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= k;
    if (total > kMaxEnumerations)
      throw std::invalid_argument(
          "brute force: k^n exceeds the 10^7 enumeration bound (n=" +
          std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
}

// Iterative odometer over labelings in lexicographic order (leftmost digit
// most significant). Returns false when the enumeration wraps around.
bool advance(std::vector<int>& x, int k) {
  for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i) {
    if (++x[static_cast<std::size_t>(i)] < k) return true;
    x[static_cast<std::size_t>(i)] = 0;
  }
  return false;
}

}  // namespace

std::pair<Labeling, double> brute_force_opt(const UGInstance& inst) {
  check_size(inst.n, inst.k);
  const int m = inst.edge_count();
  Labeling cur;
  cur.x.assign(static_cast<std::size_t>(inst.n), 0);
  Labeling best = cur;
  int best_sat = satisfied_count(inst, cur);
  while (best_sat < m && advance(cur.x, inst.k)) {
    int sat = satisfied_count(inst, cur);
    if (sat > best_sat) {  // strict: keeps the lexicographically first maximizer
      best_sat = sat;
      best = cur;
    }
  }
  double val = m == 0 ? 1.0 : static_cast<double>(best_sat) / m;
  return {best, val};
}

double brute_force_2to2(const gen::TwoToTwoGame& game) {
  check_size(game.n, game.k);
  game.validate();
  const int m = static_cast<int>(game.edges.size());
  if (m == 0) return 1.0;
  std::vector<int> x(static_cast<std::size_t>(game.n), 0);
  int best = 0;
  do {
    int sat = 0;
    for (const auto& pred : game.edges) {
      int xu = x[static_cast<std::size_t>(pred.u)];
      int xv = x[static_cast<std::size_t>(pred.v)];
      if (pred.mat[static_cast<std::size_t>(xu * game.k + xv)]) ++sat;
    }
    if (sat > best) best = sat;
    if (best == m) break;
  } while (advance(x, game.k));
  return static_cast<double>(best) / m;
}

}  // namespace ug::oracle

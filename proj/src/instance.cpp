#include "ug/instance.hpp"

#include <stdexcept>
#include <string>

namespace ug {

void UGInstance::validate() const {
  if (n <= 0) throw std::invalid_argument("instance: n must be positive");
  if (k < 2) throw std::invalid_argument("instance: k must be at least 2");
  std::vector<char> seen(static_cast<std::size_t>(k));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& ed = edges[e];
    if (ed.u < 0 || ed.v < 0 || ed.u >= n || ed.v >= n)
      throw std::invalid_argument("instance: edge endpoint out of range");
    if (ed.u == ed.v)
      throw std::invalid_argument("instance: self-loops are not allowed");
    if (ed.u > ed.v)
      throw std::invalid_argument("instance: edges must be oriented u < v");
    if (static_cast<int>(ed.perm.size()) != k)
      throw std::invalid_argument("instance: permutation has wrong length");
    std::fill(seen.begin(), seen.end(), 0);
    for (int img : ed.perm) {
      if (img < 0 || img >= k || seen[static_cast<std::size_t>(img)])
        throw std::invalid_argument("instance: constraint is not a bijection");
      seen[static_cast<std::size_t>(img)] = 1;
    }
    if (is_linear) {
      if (ed.shift < 0 || ed.shift >= k)
        throw std::invalid_argument("instance: linear edge without valid shift");
      for (int i = 0; i < k; ++i)
        if (ed.perm[static_cast<std::size_t>(i)] != (i + ed.shift) % k)
          throw std::invalid_argument(
              "instance: shift does not match permutation");
    } else if (ed.shift != -1) {
      throw std::invalid_argument(
          "instance: non-linear edge must not carry a shift");
    }
  }
}

std::vector<int> UGInstance::inverse_perm(int e) const {
  const auto& p = edges[static_cast<std::size_t>(e)].perm;
  std::vector<int> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return inv;
}

int satisfied_count(const UGInstance& inst, const Labeling& lab) {
  if (lab.size() != inst.n)
    throw std::invalid_argument("value: labeling length does not match n");
  int sat = 0;
  for (const auto& ed : inst.edges) {
    int lu = lab.x[static_cast<std::size_t>(ed.u)];
    int lv = lab.x[static_cast<std::size_t>(ed.v)];
    if (lu < 0 || lu >= inst.k || lv < 0 || lv >= inst.k)
      throw std::invalid_argument("value: label out of range");
    if (ed.perm[static_cast<std::size_t>(lu)] == lv) ++sat;
  }
  return sat;
}

double value(const UGInstance& inst, const Labeling& lab) {
  if (inst.edges.empty()) return 1.0;
  return static_cast<double>(satisfied_count(inst, lab)) /
         static_cast<double>(inst.edges.size());
}

LabelExtendedGraph build_label_extended(const UGInstance& inst) {
  LabelExtendedGraph g;
  g.n = inst.n;
  g.k = inst.k;
  g.edges.reserve(inst.edges.size() * static_cast<std::size_t>(inst.k));
  for (const auto& ed : inst.edges)
    for (int i = 0; i < inst.k; ++i)
      g.edges.emplace_back(g.node(ed.u, i),
                           g.node(ed.v, ed.perm[static_cast<std::size_t>(i)]));
  return g;
}

}  // namespace ug

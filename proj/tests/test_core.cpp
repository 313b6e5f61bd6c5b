#include <doctest.h>

#include <stdexcept>

#include "ug/instance.hpp"
#include "ug/rng.hpp"
#include "ug/solution.hpp"

using namespace ug;

namespace {

UGInstance identity_instance(int n, int k, const std::vector<std::pair<int, int>>& edges) {
  UGInstance inst;
  inst.n = n;
  inst.k = k;
  for (auto [u, v] : edges) {
    ConstraintEdge ed;
    ed.u = u;
    ed.v = v;
    ed.perm.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) ed.perm[static_cast<std::size_t>(i)] = i;
    inst.edges.push_back(std::move(ed));
  }
  return inst;
}

// Triangle with x_a != x_b constraints on every edge, k=2 (swap permutations).
UGInstance xor_triangle() {
  UGInstance inst;
  inst.n = 3;
  inst.k = 2;
  for (auto [u, v] : {std::pair<int, int>{0, 1}, {1, 2}, {0, 2}}) {
    ConstraintEdge ed;
    ed.u = u;
    ed.v = v;
    ed.perm = {1, 0};
    inst.edges.push_back(std::move(ed));
  }
  return inst;
}

}  // namespace

TEST_CASE("value: identity instance with constant labeling") {
  auto inst = identity_instance(4, 3, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  inst.validate();
  Labeling lab;
  lab.x = {1, 1, 1, 1};
  CHECK(value(inst, lab) == 1.0);
}

TEST_CASE("value: xor triangle achieves 2/3 on (0,1,0)") {
  auto inst = xor_triangle();
  inst.validate();
  Labeling lab;
  lab.x = {0, 1, 0};
  CHECK(value(inst, lab) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("value: single unsatisfied edge") {
  UGInstance inst;
  inst.n = 2;
  inst.k = 2;
  ConstraintEdge ed;
  ed.u = 0;
  ed.v = 1;
  ed.perm = {1, 0};
  inst.edges.push_back(ed);
  Labeling lab;
  lab.x = {0, 0};
  CHECK(value(inst, lab) == 0.0);
}

TEST_CASE("value: dimension mismatch throws") {
  auto inst = identity_instance(3, 2, {{0, 1}});
  Labeling lab;
  lab.x = {0, 1};  // wrong length
  CHECK_THROWS_AS(value(inst, lab), std::invalid_argument);
}

TEST_CASE("validate rejects broken instances") {
  UGInstance inst;
  inst.n = 2;
  inst.k = 2;
  ConstraintEdge ed;
  ed.u = 0;
  ed.v = 0;  // self-loop
  ed.perm = {0, 1};
  inst.edges.push_back(ed);
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);

  inst.edges[0].v = 1;
  inst.edges[0].perm = {0, 0};  // not a bijection
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);

  inst.edges[0].perm = {0, 1};
  CHECK_NOTHROW(inst.validate());
}

TEST_CASE("build_label_extended: identity edge, k=3") {
  auto inst = identity_instance(2, 3, {{0, 1}});
  auto g = build_label_extended(inst);
  REQUIRE(g.edges.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(g.edges[static_cast<std::size_t>(i)].first == g.node(0, i));
    CHECK(g.edges[static_cast<std::size_t>(i)].second == g.node(1, i));
  }
}

TEST_CASE("build_label_extended: swap edge, k=2") {
  UGInstance inst;
  inst.n = 2;
  inst.k = 2;
  ConstraintEdge ed;
  ed.u = 0;
  ed.v = 1;
  ed.perm = {1, 0};
  inst.edges.push_back(ed);
  auto g = build_label_extended(inst);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0] == std::pair<int, int>(g.node(0, 0), g.node(1, 1)));
  CHECK(g.edges[1] == std::pair<int, int>(g.node(0, 1), g.node(1, 0)));
}

TEST_CASE("build_label_extended: path of two edges, k=2") {
  auto inst = identity_instance(3, 2, {{0, 1}, {1, 2}});
  auto g = build_label_extended(inst);
  CHECK(g.edges.size() == 4);  // k*|E|, enumerated by hand from the definition
}

TEST_CASE("label-extended layer property: layer i complete iff constant labeling satisfies") {
  // One identity edge and one swap edge: layer 0 of the identity edge exists,
  // the swap edge contributes no constant-layer edges.
  UGInstance inst;
  inst.n = 3;
  inst.k = 2;
  ConstraintEdge e0;
  e0.u = 0;
  e0.v = 1;
  e0.perm = {0, 1};
  ConstraintEdge e1;
  e1.u = 1;
  e1.v = 2;
  e1.perm = {1, 0};
  inst.edges = {e0, e1};
  auto g = build_label_extended(inst);
  for (int layer = 0; layer < 2; ++layer) {
    int present = 0;
    for (const auto& [a, b] : g.edges)
      if (g.label_of(a) == layer && g.label_of(b) == layer) ++present;
    Labeling lab;
    lab.x = {layer, layer, layer};
    bool satisfies_all = value(inst, lab) == 1.0;
    CHECK((present == inst.edge_count()) == satisfies_all);
  }
}

TEST_CASE("value invariant under simultaneous relabeling") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + rng.uniform_int(3);
    int k = 2 + rng.uniform_int(3);
    UGInstance inst;
    inst.n = n;
    inst.k = k;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) {
        if (rng.uniform() < 0.5) continue;
        ConstraintEdge ed;
        ed.u = u;
        ed.v = v;
        ed.perm = rng.permutation(k);
        inst.edges.push_back(std::move(ed));
      }
    if (inst.edges.empty()) continue;
    Labeling lab;
    lab.x.resize(static_cast<std::size_t>(n));
    for (auto& x : lab.x) x = rng.uniform_int(k);

    // Per-vertex relabelings sigma_u; conjugated constraints pi' = sigma_v o pi o sigma_u^-1.
    std::vector<std::vector<int>> sigma;
    for (int u = 0; u < n; ++u) sigma.push_back(rng.permutation(k));
    UGInstance perm_inst = inst;
    for (auto& ed : perm_inst.edges) {
      std::vector<int> p(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) {
        // label i at u in the new naming corresponds to old label sigma_u^-1(i)
        int old_i = -1;
        for (int t = 0; t < k; ++t)
          if (sigma[static_cast<std::size_t>(ed.u)][static_cast<std::size_t>(t)] == i) {
            old_i = t;
            break;
          }
        p[static_cast<std::size_t>(i)] =
            sigma[static_cast<std::size_t>(ed.v)][static_cast<std::size_t>(
                ed.perm[static_cast<std::size_t>(old_i)])];
      }
      ed.perm = std::move(p);
    }
    perm_inst.validate();
    Labeling perm_lab;
    perm_lab.x.resize(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
      perm_lab.x[static_cast<std::size_t>(u)] =
          sigma[static_cast<std::size_t>(u)]
               [static_cast<std::size_t>(lab.x[static_cast<std::size_t>(u)])];
    CHECK(value(inst, lab) == doctest::Approx(value(perm_inst, perm_lab)));
  }
}

TEST_CASE("inverse_perm round-trips") {
  Rng rng(3);
  UGInstance inst;
  inst.n = 2;
  inst.k = 6;
  ConstraintEdge ed;
  ed.u = 0;
  ed.v = 1;
  ed.perm = rng.permutation(6);
  inst.edges.push_back(ed);
  auto inv = inst.inverse_perm(0);
  for (int i = 0; i < 6; ++i)
    CHECK(inv[static_cast<std::size_t>(inst.map_forward(0, i))] == i);
}

TEST_CASE("edge_length on integral standard solutions") {
  // Single identity edge, k=2. Encode labelings as indicator solutions.
  auto inst = identity_instance(2, 2, {{0, 1}});
  VectorSolution sol;
  sol.flavor = SdpFlavor::Standard;
  sol.n = 2;
  sol.k = 2;
  sol.d = 3;
  sol.data.assign(2 * 2 * 3, 0.0);

  auto set_indicator = [&](int u, int label) {
    for (int i = 0; i < 2; ++i)
      for (int c = 0; c < 3; ++c)
        sol.data[(static_cast<std::size_t>(u) * 2 + i) * 3 + c] = 0.0;
    sol.data[(static_cast<std::size_t>(u) * 2 + label) * 3 + 0] = 1.0;
  };

  set_indicator(0, 0);
  set_indicator(1, 0);  // satisfied edge
  CHECK(edge_length(sol, inst, 0) == doctest::Approx(0.0));

  set_indicator(1, 1);  // unsatisfied edge: two mismatched indicator terms
  CHECK(edge_length(sol, inst, 0) == doctest::Approx(1.0));
}

TEST_CASE("edge_length zero for shared crude frame") {
  auto inst = identity_instance(2, 3, {{0, 1}});
  VectorSolution sol;
  sol.flavor = SdpFlavor::Crude;
  sol.n = 2;
  sol.k = 3;
  sol.d = 3;
  sol.data.assign(2 * 3 * 3, 0.0);
  for (int u = 0; u < 2; ++u)
    for (int i = 0; i < 3; ++i)
      sol.data[(static_cast<std::size_t>(u) * 3 + i) * 3 + i] = 1.0;
  CHECK(edge_length(sol, inst, 0) == doctest::Approx(0.0));
}

#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ug {

// One constraint edge. `perm` maps labels of u to labels of v (forward
// direction u -> v under the canonical orientation u < v). For linear
// instances `shift` holds s with perm[i] = (i + s) mod k; it is -1 otherwise.
struct ConstraintEdge {
  int u = 0;
  int v = 0;
  std::vector<int> perm;
  int shift = -1;
};

// A full labeling, one label in [0,k) per vertex.
struct Labeling {
  std::vector<int> x;

  int size() const { return static_cast<int>(x.size()); }
  bool operator==(const Labeling&) const = default;
};

// Unique game instance: constraint graph plus one permutation of [k] per
// edge. Immutable after construction in all library code paths.
struct UGInstance {
  int n = 0;
  int k = 0;
  bool is_linear = false;
  std::vector<ConstraintEdge> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }

  // Throws std::invalid_argument when any structural invariant fails:
  // permutations must be bijections on [k], no self-loops, u < v, linear
  // instances must carry consistent shifts.
  void validate() const;

  // Inverse permutation of edge e (direction v -> u), computed on demand.
  std::vector<int> inverse_perm(int e) const;

  // Image of label i across edge e, in either direction.
  int map_forward(int e, int i) const {
    return edges[static_cast<std::size_t>(e)].perm[static_cast<std::size_t>(i)];
  }
};

// Fraction of constraints satisfied by `lab`, in [0,1].
double value(const UGInstance& inst, const Labeling& lab);

// Number of satisfied constraints (exact count for tests).
int satisfied_count(const UGInstance& inst, const Labeling& lab);

// Graph on V x [k]: node (u,i) has id u*k+i, one edge ((u,i),(v,perm[i]))
// per constraint edge and label.
struct LabelExtendedGraph {
  int n = 0;
  int k = 0;
  // Edge list grouped by constraint edge: entry e*k+i corresponds to label i
  // of constraint edge e.
  std::vector<std::pair<int, int>> edges;

  int node(int u, int i) const { return u * k + i; }
  int block_of(int node_id) const { return node_id / k; }
  int label_of(int node_id) const { return node_id % k; }
};

LabelExtendedGraph build_label_extended(const UGInstance& inst);

// Pre-corruption ground truth, written to the .truth.json sidecar and never
// consumed by solvers.
struct CorruptionRecord {
  std::vector<int> corrupted;               // indices into inst.edges
  std::vector<ConstraintEdge> originals;    // pre-corruption constraints, same order
  std::optional<Labeling> planted;
  int model = 0;
  double eps = 0.0;
};

}  // namespace ug

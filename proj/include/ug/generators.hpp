#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ug/instance.hpp"
#include "ug/rng.hpp"

namespace ug::gen {

enum class Model {
  RandomEdgesAdvConstraints = 1,   // random E_eps, adversarial replacements
  AdvEdgesRandomConstraints = 2,   // adversarial E_eps, random replacements
  RandomInitialConstraints = 3,    // random initial constraints, adversarial E_eps
};

enum class GraphKind { GnmErdosRenyi, RandomRegular, ExplicitEdgeList };

GraphKind graph_kind_from_string(const std::string& s);
Model model_from_int(int m);

// Closed set of adversary strategies; every strategy emits valid
// permutations (shifts in linear mode) by construction.
struct AdversaryStrategy {
  enum class Kind {
    RandomReplacement,    // uniform over k! permutations (k shifts if linear)
    ShiftByOne,           // compose with +1 cyclic shift on outputs
    PlantedSecondLayer,   // swap the images of the planted label and its successor
    MixedInstance,        // adversary-prepared list of replacement constraints
  };
  Kind kind = Kind::RandomReplacement;
  // MixedInstance payload: edge index -> replacement constraint. Edges of
  // E_eps absent from the list keep their original constraint.
  std::map<int, ConstraintEdge> mixed_list;
};

AdversaryStrategy::Kind adversary_from_string(const std::string& s);
std::string to_string(AdversaryStrategy::Kind k);

struct GenConfig {
  int n = 0;
  int k = 2;
  int m = -1;            // target edge count; derived from avg_deg if < 0
  double avg_deg = -1.0;
  double eps = 0.0;
  Model model = Model::RandomEdgesAdvConstraints;
  AdversaryStrategy adversary;
  bool linear = false;
  GraphKind graph = GraphKind::GnmErdosRenyi;
  // Model-1 edge selection: per-edge Bernoulli(eps) by default; fixed-size
  // floor(eps*m) subset when true (for model-2 style experiments).
  bool fixed_size_corruption = false;
  std::uint64_t seed = 1;

  int resolved_m() const;
};

struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, no duplicates
};

// Simple graph with exactly m edges. RandomRegular requires that
// 2m/n is an even-product integral degree (n*deg even); throws
// std::invalid_argument on infeasible parameters.
SimpleGraph gen_graph(int n, int m, GraphKind kind, Rng& rng);
SimpleGraph graph_from_edges(int n, std::vector<std::pair<int, int>> edges);

// A completely satisfiable instance together with the labeling it encodes.
struct InitialInstance {
  UGInstance inst;
  Labeling planted;
};

// Builds the initial (pre-corruption) instance on `g`: each constraint is a
// uniform random permutation mapping planted[u] to planted[v]; in linear
// mode the shift s = planted[v] - planted[u] is forced.
InitialInstance make_initial_instance(const SimpleGraph& g, int k, bool linear,
                                      const Labeling& planted, Rng& rng);

// "Random edges, adversarial constraints": each edge lands in E_eps
// independently with probability eps (or a fixed-size random subset when
// cfg.fixed_size_corruption), then the adversary replaces those constraints.
std::pair<UGInstance, CorruptionRecord> gen_model1(const GenConfig& cfg,
                                                   const InitialInstance& initial,
                                                   Rng& rng);

// "Adversarial edges, random constraints": the caller supplies E_eps of size
// floor(eps*m); constraints on it are replaced with uniform random
// permutations (uniform shifts in linear mode).
std::pair<UGInstance, CorruptionRecord> gen_model2(const GenConfig& cfg,
                                                   const InitialInstance& initial,
                                                   const std::vector<int>& eps_edges,
                                                   Rng& rng);

// "Random initial constraints": constraints are uniform among the (k-1)!
// permutations consistent with the planted labeling, then the adversary
// overwrites the supplied E_eps (|E_eps| <= eps*m).
std::pair<UGInstance, CorruptionRecord> gen_model3(const GenConfig& cfg,
                                                   const SimpleGraph& g,
                                                   const Labeling& planted,
                                                   const std::vector<int>& eps_edges,
                                                   const AdversaryStrategy& adversary,
                                                   Rng& rng);

// Convenience wrapper used by the CLI and the harness: builds the graph, the
// planted labeling and the initial instance from cfg.seed, then runs the
// configured model. Returns instance + ground-truth record.
std::pair<UGInstance, CorruptionRecord> generate(const GenConfig& cfg);

// 2-to-2 games: each edge carries a k x k 0/1 predicate whose compatibility
// graph is 2-regular on both sides.
struct TwoToTwoGame {
  struct Pred {
    int u = 0;
    int v = 0;
    std::vector<std::uint8_t> mat;  // k*k, row-major: mat[i*k+j] = Pi(i,j)
  };
  int n = 0;
  int k = 0;  // even
  std::vector<Pred> edges;

  void validate() const;  // throws if any predicate is not 2-regular
};

// Decomposes every predicate into two disjoint permutation matchings and
// keeps one of them uniformly at random.
UGInstance reduce_2to2(const TwoToTwoGame& game, Rng& rng);

// Cloud product: N fresh vertices per original vertex, complete bipartite
// connections between adjacent clouds, predicates copied. Output has
// N^2 * |E| edges; guarded against overflow.
TwoToTwoGame amplify_degree(const TwoToTwoGame& game, int N);

// Random 2-to-2 game on a given graph; when `planted` is supplied every
// predicate is built to accept it, making the game satisfiable.
TwoToTwoGame gen_2to2(const SimpleGraph& g, int k,
                      const std::optional<Labeling>& planted, Rng& rng);

}  // namespace ug::gen

#include "ug/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ug::gen {

namespace {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<int> shift_perm(int k, int s) {
  std::vector<int> p(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = (i + s) % k;
  return p;
}

void assign_shift(ConstraintEdge& ed, int k, int s) {
  ed.shift = s;
  ed.perm = shift_perm(k, s);
}

bool is_permutation(const std::vector<int>& p, int k) {
  if (static_cast<int>(p.size()) != k) return false;
  std::vector<char> seen(static_cast<std::size_t>(k), 0);
  for (int v : p) {
    if (v < 0 || v >= k || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

// Applies one adversary replacement to edge `ed`. `planted` may be null for
// strategies that do not need it.
void corrupt_edge(ConstraintEdge& ed, int edge_index, int k, bool linear,
                  const AdversaryStrategy& strategy, const Labeling* planted,
                  Rng& rng) {
  switch (strategy.kind) {
    case AdversaryStrategy::Kind::RandomReplacement: {
      if (linear) {
        assign_shift(ed, k, rng.uniform_int(k));
      } else {
        ed.perm = rng.permutation(k);
      }
      break;
    }
    case AdversaryStrategy::Kind::ShiftByOne: {
      if (linear) {
        assign_shift(ed, k, (ed.shift + 1) % k);
      } else {
        for (auto& img : ed.perm) img = (img + 1) % k;
      }
      break;
    }
    case AdversaryStrategy::Kind::PlantedSecondLayer: {
      if (planted == nullptr)
        throw GenerationError(
            "adversary planted-second-layer requires a planted labeling");
      int a = planted->x[static_cast<std::size_t>(ed.u)];
      int a2 = (a + 1) % k;
      if (linear) {
        // The swap of two inputs is not a shift; move the planted image by
        // one instead, which is the nearest linear analogue.
        assign_shift(ed, k, (ed.shift + 1) % k);
      } else {
        std::swap(ed.perm[static_cast<std::size_t>(a)],
                  ed.perm[static_cast<std::size_t>(a2)]);
      }
      break;
    }
    case AdversaryStrategy::Kind::MixedInstance: {
      auto it = strategy.mixed_list.find(edge_index);
      if (it == strategy.mixed_list.end()) break;  // reverted to the original
      const ConstraintEdge& repl = it->second;
      if (linear) {
        if (repl.shift < 0 || repl.shift >= k)
          throw GenerationError("mixed-instance payload: invalid shift");
        assign_shift(ed, k, repl.shift);
      } else {
        if (!is_permutation(repl.perm, k))
          throw GenerationError("mixed-instance payload: not a permutation");
        ed.perm = repl.perm;
      }
      break;
    }
  }
  if (!is_permutation(ed.perm, k))
    throw GenerationError("adversary emitted a non-permutation constraint");
}

}  // namespace

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "gnm") return GraphKind::GnmErdosRenyi;
  if (s == "regular") return GraphKind::RandomRegular;
  if (s == "file" || s == "explicit") return GraphKind::ExplicitEdgeList;
  throw std::invalid_argument("unknown graph kind: " + s);
}

Model model_from_int(int m) {
  switch (m) {
    case 1: return Model::RandomEdgesAdvConstraints;
    case 2: return Model::AdvEdgesRandomConstraints;
    case 3: return Model::RandomInitialConstraints;
  }
  throw std::invalid_argument("model must be 1, 2 or 3");
}

AdversaryStrategy::Kind adversary_from_string(const std::string& s) {
  if (s == "random-replacement") return AdversaryStrategy::Kind::RandomReplacement;
  if (s == "shift-by-one") return AdversaryStrategy::Kind::ShiftByOne;
  if (s == "planted-second-layer")
    return AdversaryStrategy::Kind::PlantedSecondLayer;
  if (s == "mixed-instance") return AdversaryStrategy::Kind::MixedInstance;
  throw std::invalid_argument("unknown adversary strategy: " + s);
}

std::string to_string(AdversaryStrategy::Kind k) {
  switch (k) {
    case AdversaryStrategy::Kind::RandomReplacement: return "random-replacement";
    case AdversaryStrategy::Kind::ShiftByOne: return "shift-by-one";
    case AdversaryStrategy::Kind::PlantedSecondLayer:
      return "planted-second-layer";
    case AdversaryStrategy::Kind::MixedInstance: return "mixed-instance";
  }
  return "unknown";
}

int GenConfig::resolved_m() const {
  if (m >= 0) return m;
  if (avg_deg > 0)
    return static_cast<int>(std::llround(avg_deg * n / 2.0));
  throw std::invalid_argument("GenConfig: neither m nor avg_deg set");
}

SimpleGraph graph_from_edges(int n, std::vector<std::pair<int, int>> edges) {
  SimpleGraph g;
  g.n = n;
  for (auto& [u, v] : edges) {
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n) throw std::invalid_argument("graph: vertex out of range");
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("graph: duplicate edge");
  g.edges = std::move(edges);
  return g;
}

SimpleGraph gen_graph(int n, int m, GraphKind kind, Rng& rng) {
  if (n < 2) throw std::invalid_argument("gen_graph: n must be at least 2");
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  if (m < 0 || m > max_edges)
    throw std::invalid_argument("gen_graph: m exceeds n(n-1)/2");

  switch (kind) {
    case GraphKind::GnmErdosRenyi: {
      std::vector<std::pair<int, int>> edges;
      edges.reserve(static_cast<std::size_t>(m));
      if (max_edges <= 4'000'000) {
        // Materialize all pairs and take a random m-subset.
        std::vector<int> idx = rng.subset(static_cast<int>(max_edges), m);
        for (int id : idx) {
          // Unrank pair id in the lexicographic enumeration of u < v.
          int u = 0;
          long long offset = 0;
          while (offset + (n - 1 - u) <= id) {
            offset += n - 1 - u;
            ++u;
          }
          int v = u + 1 + static_cast<int>(id - offset);
          edges.emplace_back(u, v);
        }
      } else {
        std::set<std::pair<int, int>> chosen;
        while (static_cast<int>(chosen.size()) < m) {
          int u = rng.uniform_int(n);
          int v = rng.uniform_int(n);
          if (u == v) continue;
          if (u > v) std::swap(u, v);
          chosen.emplace(u, v);
        }
        edges.assign(chosen.begin(), chosen.end());
      }
      return graph_from_edges(n, std::move(edges));
    }
    case GraphKind::RandomRegular: {
      if (m % n != 0 && (2LL * m) % n != 0)
        throw std::invalid_argument("gen_graph: 2m/n must be an integer degree");
      long long deg2 = 2LL * m;
      if (deg2 % n != 0)
        throw std::invalid_argument("gen_graph: 2m/n must be an integer degree");
      int deg = static_cast<int>(deg2 / n);
      if (deg >= n)
        throw std::invalid_argument("gen_graph: degree must be below n");
      // Configuration model with whole-matching restarts on collisions.
      for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * deg);
        for (int u = 0; u < n; ++u)
          for (int t = 0; t < deg; ++t) stubs.push_back(u);
        rng.shuffle(stubs);
        std::set<std::pair<int, int>> chosen;
        bool ok = true;
        for (std::size_t t = 0; t + 1 < stubs.size(); t += 2) {
          int u = stubs[t], v = stubs[t + 1];
          if (u == v) { ok = false; break; }
          if (u > v) std::swap(u, v);
          if (!chosen.emplace(u, v).second) { ok = false; break; }
        }
        if (!ok) continue;
        std::vector<std::pair<int, int>> edges(chosen.begin(), chosen.end());
        return graph_from_edges(n, std::move(edges));
      }
      throw GenerationError("gen_graph: random-regular pairing did not converge");
    }
    case GraphKind::ExplicitEdgeList:
      throw std::invalid_argument(
          "gen_graph: explicit edge lists go through graph_from_edges");
  }
  throw std::invalid_argument("gen_graph: unknown kind");
}

InitialInstance make_initial_instance(const SimpleGraph& g, int k, bool linear,
                                      const Labeling& planted, Rng& rng) {
  if (planted.size() != g.n)
    throw std::invalid_argument("make_initial_instance: planted length mismatch");
  InitialInstance out;
  out.planted = planted;
  out.inst.n = g.n;
  out.inst.k = k;
  out.inst.is_linear = linear;
  out.inst.edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) {
    ConstraintEdge ed;
    ed.u = u;
    ed.v = v;
    int xu = planted.x[static_cast<std::size_t>(u)];
    int xv = planted.x[static_cast<std::size_t>(v)];
    if (linear) {
      assign_shift(ed, k, ((xv - xu) % k + k) % k);
    } else {
      ed.perm = rng.permutation_fixing(k, xu, xv);
    }
    out.inst.edges.push_back(std::move(ed));
  }
  out.inst.validate();
  return out;
}

std::pair<UGInstance, CorruptionRecord> gen_model1(const GenConfig& cfg,
                                                   const InitialInstance& initial,
                                                   Rng& rng) {
  if (value(initial.inst, initial.planted) != 1.0)
    throw std::invalid_argument(
        "gen_model1: initial instance is not satisfied by its planted labeling");
  UGInstance inst = initial.inst;
  CorruptionRecord rec;
  rec.model = 1;
  rec.eps = cfg.eps;
  rec.planted = initial.planted;
  const int m = inst.edge_count();
  std::vector<int> chosen;
  if (cfg.fixed_size_corruption) {
    chosen = rng.subset(m, static_cast<int>(std::floor(cfg.eps * m)));
  } else {
    for (int e = 0; e < m; ++e)
      if (rng.uniform() < cfg.eps) chosen.push_back(e);
  }
  for (int e : chosen) {
    rec.corrupted.push_back(e);
    rec.originals.push_back(inst.edges[static_cast<std::size_t>(e)]);
    corrupt_edge(inst.edges[static_cast<std::size_t>(e)], e, cfg.k, cfg.linear,
                 cfg.adversary, &initial.planted, rng);
  }
  inst.validate();
  return {std::move(inst), std::move(rec)};
}

std::pair<UGInstance, CorruptionRecord> gen_model2(const GenConfig& cfg,
                                                   const InitialInstance& initial,
                                                   const std::vector<int>& eps_edges,
                                                   Rng& rng) {
  const int m = initial.inst.edge_count();
  const int want = static_cast<int>(std::floor(cfg.eps * m));
  if (static_cast<int>(eps_edges.size()) != want)
    throw std::invalid_argument("gen_model2: |E_eps| must equal floor(eps*m)");
  std::set<int> uniq(eps_edges.begin(), eps_edges.end());
  if (static_cast<int>(uniq.size()) != want ||
      (!uniq.empty() && (*uniq.begin() < 0 || *uniq.rbegin() >= m)))
    throw std::invalid_argument("gen_model2: E_eps out of range");

  UGInstance inst = initial.inst;
  CorruptionRecord rec;
  rec.model = 2;
  rec.eps = cfg.eps;
  rec.planted = initial.planted;
  for (int e : eps_edges) {
    rec.corrupted.push_back(e);
    rec.originals.push_back(inst.edges[static_cast<std::size_t>(e)]);
    auto& ed = inst.edges[static_cast<std::size_t>(e)];
    if (cfg.linear) {
      assign_shift(ed, cfg.k, rng.uniform_int(cfg.k));
    } else {
      ed.perm = rng.permutation(cfg.k);
    }
  }
  inst.validate();
  return {std::move(inst), std::move(rec)};
}

std::pair<UGInstance, CorruptionRecord> gen_model3(const GenConfig& cfg,
                                                   const SimpleGraph& g,
                                                   const Labeling& planted,
                                                   const std::vector<int>& eps_edges,
                                                   const AdversaryStrategy& adversary,
                                                   Rng& rng) {
  const int m = static_cast<int>(g.edges.size());
  if (static_cast<double>(eps_edges.size()) > cfg.eps * m + 1e-9)
    throw std::invalid_argument("gen_model3: |E_eps| exceeds eps*|E|");
  std::set<int> uniq(eps_edges.begin(), eps_edges.end());
  if (uniq.size() != eps_edges.size() ||
      (!uniq.empty() && (*uniq.begin() < 0 || *uniq.rbegin() >= m)))
    throw std::invalid_argument("gen_model3: E_eps out of range");

  // The random step: uniform constraints consistent with the planted labeling.
  InitialInstance initial = make_initial_instance(g, cfg.k, cfg.linear, planted, rng);
  UGInstance inst = std::move(initial.inst);
  CorruptionRecord rec;
  rec.model = 3;
  rec.eps = cfg.eps;
  rec.planted = planted;
  for (int e : eps_edges) {
    rec.corrupted.push_back(e);
    rec.originals.push_back(inst.edges[static_cast<std::size_t>(e)]);
    corrupt_edge(inst.edges[static_cast<std::size_t>(e)], e, cfg.k, cfg.linear,
                 adversary, &planted, rng);
  }
  inst.validate();
  return {std::move(inst), std::move(rec)};
}

std::pair<UGInstance, CorruptionRecord> generate(const GenConfig& cfg) {
  Rng rng(cfg.seed);
  SimpleGraph g = gen_graph(cfg.n, cfg.resolved_m(), cfg.graph, rng);
  Labeling planted;
  planted.x.resize(static_cast<std::size_t>(cfg.n));
  for (auto& x : planted.x) x = rng.uniform_int(cfg.k);

  switch (cfg.model) {
    case Model::RandomEdgesAdvConstraints: {
      InitialInstance initial =
          make_initial_instance(g, cfg.k, cfg.linear, planted, rng);
      return gen_model1(cfg, initial, rng);
    }
    case Model::AdvEdgesRandomConstraints: {
      InitialInstance initial =
          make_initial_instance(g, cfg.k, cfg.linear, planted, rng);
      int want = static_cast<int>(
          std::floor(cfg.eps * initial.inst.edge_count()));
      std::vector<int> eps_edges = rng.subset(initial.inst.edge_count(), want);
      return gen_model2(cfg, initial, eps_edges, rng);
    }
    case Model::RandomInitialConstraints: {
      int want = static_cast<int>(std::floor(cfg.eps * g.edges.size()));
      std::vector<int> eps_edges =
          rng.subset(static_cast<int>(g.edges.size()), want);
      return gen_model3(cfg, g, planted, eps_edges, cfg.adversary, rng);
    }
  }
  throw std::invalid_argument("generate: unknown model");
}

void TwoToTwoGame::validate() const {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("2-to-2 game: k must be even and >= 2");
  for (const auto& pred : edges) {
    if (pred.u < 0 || pred.v < 0 || pred.u >= n || pred.v >= n || pred.u == pred.v)
      throw std::invalid_argument("2-to-2 game: bad edge endpoints");
    if (static_cast<int>(pred.mat.size()) != k * k)
      throw std::invalid_argument("2-to-2 game: predicate has wrong size");
    for (int i = 0; i < k; ++i) {
      int row = 0, col = 0;
      for (int j = 0; j < k; ++j) {
        row += pred.mat[static_cast<std::size_t>(i * k + j)] ? 1 : 0;
        col += pred.mat[static_cast<std::size_t>(j * k + i)] ? 1 : 0;
      }
      if (row != 2 || col != 2)
        throw std::invalid_argument("2-to-2 game: predicate is not 2-regular");
    }
  }
}

UGInstance reduce_2to2(const TwoToTwoGame& game, Rng& rng) {
  game.validate();
  UGInstance inst;
  inst.n = game.n;
  inst.k = game.k;
  inst.is_linear = false;
  inst.edges.reserve(game.edges.size());
  const int k = game.k;
  for (const auto& pred : game.edges) {
    // The compatibility graph is 2-regular bipartite, i.e. a disjoint union
    // of even cycles; walking each cycle and alternating edges yields the
    // two permutation matchings.
    std::vector<std::array<int, 2>> right(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      int c = 0;
      for (int j = 0; j < k; ++j)
        if (pred.mat[static_cast<std::size_t>(i * k + j)])
          right[static_cast<std::size_t>(i)][static_cast<std::size_t>(c++)] = j;
    }
    std::vector<int> m0(static_cast<std::size_t>(k), -1),
        m1(static_cast<std::size_t>(k), -1);
    for (int start = 0; start < k; ++start) {
      if (m0[static_cast<std::size_t>(start)] != -1) continue;
      // Walk the cycle containing left node `start`, assigning alternate
      // edges to m0/m1.
      int i = start;
      int j = right[static_cast<std::size_t>(i)][0];
      while (m0[static_cast<std::size_t>(i)] == -1) {
        m0[static_cast<std::size_t>(i)] = j;
        // The other predicate edge at right node j goes to m1.
        int i2 = -1;
        for (int t = 0; t < k; ++t) {
          if (t != i && pred.mat[static_cast<std::size_t>(t * k + j)]) {
            i2 = t;
            break;
          }
        }
        if (i2 < 0)
          throw std::invalid_argument("2-to-2 game: predicate is not 2-regular");
        m1[static_cast<std::size_t>(i2)] = j;
        // Continue along i2's other edge.
        const auto& rr = right[static_cast<std::size_t>(i2)];
        int jn = (rr[0] == j) ? rr[1] : rr[0];
        i = i2;
        j = jn;
      }
    }
    for (int i = 0; i < k; ++i)
      if (m0[static_cast<std::size_t>(i)] < 0 || m1[static_cast<std::size_t>(i)] < 0 ||
          m0[static_cast<std::size_t>(i)] == m1[static_cast<std::size_t>(i)])
        throw std::invalid_argument("2-to-2 game: matching decomposition failed");

    ConstraintEdge ed;
    ed.u = pred.u;
    ed.v = pred.v;
    bool swap_uv = pred.u > pred.v;
    if (swap_uv) std::swap(ed.u, ed.v);
    const std::vector<int>& pick = (rng.uniform() < 0.5) ? m0 : m1;
    if (swap_uv) {
      // Store the inverse so that the canonical orientation maps u -> v.
      ed.perm.assign(static_cast<std::size_t>(k), 0);
      for (int i = 0; i < k; ++i)
        ed.perm[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])] = i;
    } else {
      ed.perm = pick;
    }
    inst.edges.push_back(std::move(ed));
  }
  inst.validate();
  return inst;
}

TwoToTwoGame amplify_degree(const TwoToTwoGame& game, int N) {
  if (N < 1) throw std::invalid_argument("amplify_degree: N must be >= 1");
  game.validate();
  const long long out_edges =
      static_cast<long long>(N) * N * static_cast<long long>(game.edges.size());
  if (out_edges > 50'000'000LL)
    throw std::invalid_argument("amplify_degree: N^2*|E| too large");
  TwoToTwoGame out;
  out.n = game.n * N;
  out.k = game.k;
  out.edges.reserve(static_cast<std::size_t>(out_edges));
  // Cloud of vertex u occupies ids [u*N, (u+1)*N).
  for (const auto& pred : game.edges) {
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        TwoToTwoGame::Pred p;
        p.u = pred.u * N + a;
        p.v = pred.v * N + b;
        p.mat = pred.mat;
        out.edges.push_back(std::move(p));
      }
    }
  }
  return out;
}

TwoToTwoGame gen_2to2(const SimpleGraph& g, int k,
                      const std::optional<Labeling>& planted, Rng& rng) {
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("gen_2to2: k must be even and >= 2");
  TwoToTwoGame game;
  game.n = g.n;
  game.k = k;
  game.edges.reserve(g.edges.size());
  for (auto [u, v] : g.edges) {
    // Two disjoint permutations sigma, tau: tau = sigma composed with a
    // uniformly random fixed-point-free permutation (rejection sampled).
    std::vector<int> sigma;
    if (planted) {
      sigma = rng.permutation_fixing(k, planted->x[static_cast<std::size_t>(u)],
                                     planted->x[static_cast<std::size_t>(v)]);
    } else {
      sigma = rng.permutation(k);
    }
    std::vector<int> rho;
    for (;;) {
      rho = rng.permutation(k);
      bool derangement = true;
      for (int i = 0; i < k; ++i)
        if (rho[static_cast<std::size_t>(i)] == i) { derangement = false; break; }
      if (derangement) break;
    }
    TwoToTwoGame::Pred p;
    p.u = u;
    p.v = v;
    p.mat.assign(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i) {
      int j0 = sigma[static_cast<std::size_t>(i)];
      int j1 = sigma[static_cast<std::size_t>(rho[static_cast<std::size_t>(i)])];
      p.mat[static_cast<std::size_t>(i * k + j0)] = 1;
      p.mat[static_cast<std::size_t>(i * k + j1)] = 1;
    }
    game.edges.push_back(std::move(p));
  }
  game.validate();
  return game;
}

}  // namespace ug::gen

#include "ug/pipeline.hpp"

#include <json.hpp>

#include "ug/lp.hpp"
#include "ug/rounding.hpp"

namespace ug::pipeline {

using nlohmann::json;

std::string Report::to_json() const {
  json j;
  j["format_version"] = 1;
  j["model"] = model;
  j["seed"] = seed;
  j["eta"] = eta;
  j["cstar"] = cstar;
  j["sdp_objective"] = sdp_objective;
  j["sdp_stalled"] = sdp_stalled;
  j["sdp_objective_pruned"] = sdp_objective_pruned;
  j["sdp_pruned_stalled"] = sdp_pruned_stalled;
  j["gamma_size"] = gamma_size;
  j["lp_value"] = lp_value;
  j["removed_edges"] = removed_edges;
  j["removed_edge_ids"] = removed_edge_ids;
  j["value"] = value;
  j["warning"] = warning;
  return j.dump();
}

std::string DistinguishResult::to_json() const {
  json j;
  j["format_version"] = 1;
  j["verdict"] = verdict == Verdict::SemiRandomUnsat ? "semi-random-unsat"
                                                     : "almost-satisfiable";
  j["sdp_objective"] = sdp_objective;
  j["threshold"] = threshold;
  j["sdp_stalled"] = sdp_stalled;
  return j.dump();
}

PipelineResult solve_model1(const UGInstance& inst, const PipelineConfig& cfg) {
  PipelineResult out;
  out.report.model = 1;
  out.report.seed = cfg.seed;
  out.report.eta = cfg.eta;
  out.report.cstar = cfg.cstar;

  sdp::SdpConfig scfg = cfg.sdp;
  scfg.flavor = SdpFlavor::Crude;
  scfg.seed = derive_seed(cfg.seed, 1);
  sdp::SolveResult solved = sdp::solve_crude(inst, scfg);
  out.report.sdp_objective = solved.objective;
  out.report.sdp_stalled = solved.stalled;

  sdp::SuperShortSet gamma =
      sdp::super_short_edges(solved.sol, inst, cfg.eta, cfg.cstar);
  out.report.gamma_size = gamma.size();

  LPWeights w = lp::solve_lp(gamma, inst);
  out.report.lp_value = w.objective;

  auto params =
      rounding::SeparatorParams::make(inst.n, inst.k, derive_seed(cfg.seed, 2));
  out.labeling = rounding::round_lp_sdp(inst, solved.sol, w, params);
  out.report.value = value(inst, out.labeling);
  out.gamma = std::move(gamma);
  out.weights = std::move(w);
  return out;
}

PipelineResult solve_model2(const UGInstance& inst, const PipelineConfig& cfg) {
  PipelineResult out;
  out.report.model = 2;
  out.report.seed = cfg.seed;
  const double eta = inst.is_linear ? kLongEdgeEtaLinear : kLongEdgeEta;
  out.report.eta = eta;

  sdp::SdpConfig scfg = cfg.sdp;
  scfg.seed = derive_seed(cfg.seed, 1);
  sdp::SolveResult solved;
  if (inst.is_linear) {
    scfg.flavor = SdpFlavor::ShiftInvariant;
    solved = sdp::solve_shift_invariant(inst, scfg);
  } else {
    scfg.flavor = SdpFlavor::Standard;
    solved = sdp::solve_standard(inst, scfg);
  }
  out.report.sdp_objective = solved.objective;
  out.report.sdp_stalled = solved.stalled;

  sdp::EdgePartition part = sdp::classify_long_edges(solved.sol, inst, eta);
  out.report.removed_edges = static_cast<int>(part.long_edges.size());
  out.report.removed_edge_ids = part.long_edges;

  // Pruned instance G*: same vertex set, short edges only.
  UGInstance pruned;
  pruned.n = inst.n;
  pruned.k = inst.k;
  pruned.is_linear = inst.is_linear;
  for (int e : part.short_edges)
    pruned.edges.push_back(inst.edges[static_cast<std::size_t>(e)]);

  if (pruned.edges.empty()) {
    out.report.warning = "pruned graph has no edges; returning arbitrary labeling";
    out.labeling.x.assign(static_cast<std::size_t>(inst.n), 0);
    out.report.value = value(inst, out.labeling);
    return out;
  }

  // Fresh solve on G* (the rounding subroutine cannot reuse the first
  // solution); rounding always runs on a standard-flavor solution.
  sdp::SdpConfig rcfg = cfg.sdp;
  rcfg.flavor = SdpFlavor::Standard;
  rcfg.seed = derive_seed(cfg.seed, 2);
  sdp::SolveResult resolved = sdp::solve_standard(pruned, rcfg);
  out.report.sdp_objective_pruned = resolved.objective;
  out.report.sdp_pruned_stalled = resolved.stalled;

  Rng rng(derive_seed(cfg.seed, 3));
  out.labeling = rounding::round_cmm(pruned, resolved.sol,
                                     rounding::kDefaultCmmTrials, rng);
  out.report.value = value(inst, out.labeling);
  return out;
}

PipelineResult solve_model3(const UGInstance& inst, const PipelineConfig& cfg) {
  PipelineResult out;
  out.report.model = 3;
  out.report.seed = cfg.seed;

  sdp::SdpConfig scfg = cfg.sdp;
  scfg.flavor = SdpFlavor::Standard;
  scfg.seed = derive_seed(cfg.seed, 1);
  sdp::SolveResult solved = sdp::solve_standard(inst, scfg);
  out.report.sdp_objective = solved.objective;
  out.report.sdp_stalled = solved.stalled;

  out.labeling = rounding::round_threshold(solved.sol);
  out.report.value = value(inst, out.labeling);
  return out;
}

DistinguishResult distinguish(const UGInstance& inst, double eps,
                              const PipelineConfig& cfg) {
  DistinguishResult out;
  out.threshold = eps / 32.0;

  sdp::SdpConfig scfg = cfg.sdp;
  scfg.flavor = SdpFlavor::Standard;
  scfg.seed = derive_seed(cfg.seed, 1);
  sdp::SolveResult solved = sdp::solve_standard(inst, scfg);
  out.sdp_objective = solved.objective;
  out.sdp_stalled = solved.stalled;
  out.verdict = solved.objective >= out.threshold ? Verdict::SemiRandomUnsat
                                                  : Verdict::AlmostSatisfiable;
  return out;
}

}  // namespace ug::pipeline

// Batch CLI for generating, solving, rounding and evaluating semi-random
// unique game instances. One subcommand per stage; all artifacts are JSON
// (instances, solutions, weights, labelings, reports) or CSV (sweeps).

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ug/generators.hpp"
#include "ug/harness.hpp"
#include "ug/json_io.hpp"
#include "ug/lp.hpp"
#include "ug/oracle.hpp"
#include "ug/pipeline.hpp"
#include "ug/rounding.hpp"
#include "ug/sdp.hpp"

using namespace ug;

namespace {

int cmd_gen(const std::string& graph_file, gen::GenConfig cfg,
            const std::string& out, const std::string& truth_out) {
  std::pair<UGInstance, CorruptionRecord> result;
  if (cfg.graph == gen::GraphKind::ExplicitEdgeList) {
    nlohmann::json j = nlohmann::json::parse(io::read_file(graph_file));
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    gen::SimpleGraph g = gen::graph_from_edges(j.at("n").get<int>(), edges);
    Rng rng(cfg.seed);
    Labeling planted;
    planted.x.resize(static_cast<std::size_t>(cfg.n));
    for (auto& x : planted.x) x = rng.uniform_int(cfg.k);
    switch (cfg.model) {
      case gen::Model::RandomEdgesAdvConstraints: {
        auto initial = gen::make_initial_instance(g, cfg.k, cfg.linear, planted, rng);
        result = gen::gen_model1(cfg, initial, rng);
        break;
      }
      case gen::Model::AdvEdgesRandomConstraints: {
        auto initial = gen::make_initial_instance(g, cfg.k, cfg.linear, planted, rng);
        int want = static_cast<int>(cfg.eps * initial.inst.edge_count());
        auto eps_edges = rng.subset(initial.inst.edge_count(), want);
        result = gen::gen_model2(cfg, initial, eps_edges, rng);
        break;
      }
      case gen::Model::RandomInitialConstraints: {
        int want = static_cast<int>(cfg.eps * g.edges.size());
        auto eps_edges = rng.subset(static_cast<int>(g.edges.size()), want);
        result = gen::gen_model3(cfg, g, planted, eps_edges, cfg.adversary, rng);
        break;
      }
    }
  } else {
    result = gen::generate(cfg);
  }
  io::write_file(out, io::instance_to_json(result.first));
  if (!truth_out.empty())
    io::write_file(truth_out, io::truth_to_json(result.second, cfg.linear));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semi-random unique games toolbench"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen_cmd = app.add_subcommand("gen", "generate a semi-random instance");
  int g_model = 1, g_n = 0, g_m = -1, g_k = 2;
  double g_deg = -1.0, g_eps = 0.0;
  std::string g_adversary = "random-replacement", g_graph = "gnm";
  std::string g_graph_file, g_out = "inst.json", g_truth;
  bool g_linear = false, g_fixed = false;
  std::uint64_t g_seed = 1;
  gen_cmd->add_option("--model", g_model, "1|2|3")->required();
  gen_cmd->add_option("--n", g_n, "vertex count")->required();
  gen_cmd->add_option("--m", g_m, "edge count");
  gen_cmd->add_option("--deg", g_deg, "average degree (alternative to --m)");
  gen_cmd->add_option("--k", g_k, "alphabet size")->required();
  gen_cmd->add_option("--eps", g_eps, "corruption fraction");
  gen_cmd->add_option("--adversary", g_adversary,
                      "random-replacement|shift-by-one|planted-second-layer|"
                      "mixed-instance");
  gen_cmd->add_flag("--linear", g_linear, "linear (shift) constraints only");
  gen_cmd->add_option("--graph", g_graph, "gnm|regular|file");
  gen_cmd->add_option("--graph-file", g_graph_file,
                      "edge list JSON for --graph file");
  gen_cmd->add_flag("--fixed-size", g_fixed,
                    "model 1: fixed-size floor(eps*m) corruption set");
  gen_cmd->add_option("--seed", g_seed, "RNG seed");
  gen_cmd->add_option("--out", g_out, "instance output path");
  gen_cmd->add_option("--truth", g_truth, "truth sidecar output path");

  // ---- sdp ----
  auto* sdp_cmd = app.add_subcommand("sdp", "solve an SDP program");
  std::string s_flavor = "standard", s_in, s_out = "sol.json";
  sdp::SdpConfig s_cfg;
  sdp_cmd->add_option("--flavor", s_flavor, "standard|crude|shift")->required();
  sdp_cmd->add_option("--in", s_in, "instance path")->required();
  sdp_cmd->add_option("--out", s_out, "solution output path");
  sdp_cmd->add_option("--dim", s_cfg.dim, "embedding dimension (0=auto)");
  sdp_cmd->add_option("--tol-feas", s_cfg.tol_feas, "feasibility tolerance");
  sdp_cmd->add_option("--tol-opt", s_cfg.tol_opt, "stall tolerance");
  sdp_cmd->add_option("--max-iters", s_cfg.max_epochs, "epoch cap");
  sdp_cmd->add_option("--seed", s_cfg.seed, "RNG seed");

  // ---- lp ----
  auto* lp_cmd = app.add_subcommand("lp", "solve the super-short-edge LP");
  std::string l_in, l_sdp, l_out = "weights.json";
  double l_eta = 0.2, l_cstar = 1.0;
  lp_cmd->add_option("--in", l_in, "instance path")->required();
  lp_cmd->add_option("--sdp", l_sdp, "crude solution path")->required();
  lp_cmd->add_option("--eta", l_eta, "super-short parameter");
  lp_cmd->add_option("--cstar", l_cstar, "threshold constant");
  lp_cmd->add_option("--out", l_out, "weights output path");

  // ---- round ----
  auto* round_cmd = app.add_subcommand("round", "extract an integral labeling");
  std::string r_method = "lpsdp", r_in, r_sdp, r_lp, r_out = "labeling.json";
  std::uint64_t r_seed = 1;
  round_cmd->add_option("--method", r_method, "lpsdp|cmm|threshold")->required();
  round_cmd->add_option("--in", r_in, "instance path")->required();
  round_cmd->add_option("--sdp", r_sdp, "solution path")->required();
  round_cmd->add_option("--lp", r_lp, "weights path (lpsdp)");
  round_cmd->add_option("--seed", r_seed, "RNG seed");
  round_cmd->add_option("--out", r_out, "labeling output path");

  // ---- pipeline ----
  auto* pipe_cmd = app.add_subcommand("pipeline", "end-to-end model pipeline");
  int p_model = 1;
  std::string p_in, p_report = "report.json", p_out;
  double p_eta = 0.2, p_cstar = 1.0;
  std::uint64_t p_seed = 1;
  pipe_cmd->add_option("--model", p_model, "1|2|3")->required();
  pipe_cmd->add_option("--in", p_in, "instance path")->required();
  pipe_cmd->add_option("--seed", p_seed, "RNG seed");
  pipe_cmd->add_option("--eta", p_eta, "model-1 super-short parameter");
  pipe_cmd->add_option("--cstar", p_cstar, "threshold constant");
  pipe_cmd->add_option("--report", p_report, "report output path");
  pipe_cmd->add_option("--out", p_out, "labeling output path");

  // ---- distinguish ----
  auto* dist_cmd = app.add_subcommand(
      "distinguish", "semi-random-unsat vs almost-satisfiable verdict");
  std::string d_in, d_report = "report.json", d_truth;
  double d_eps = 0.0;
  std::uint64_t d_seed = 1;
  dist_cmd->add_option("--in", d_in, "instance path")->required();
  dist_cmd->add_option("--eps", d_eps, "threshold parameter")->required();
  dist_cmd->add_option("--seed", d_seed, "RNG seed");
  dist_cmd->add_option("--truth", d_truth,
                       "truth sidecar (for the model sanity warning)");
  dist_cmd->add_option("--report", d_report, "report output path");

  // ---- oracle ----
  auto* oracle_cmd = app.add_subcommand("oracle", "exact optimum on tiny instances");
  std::string o_in, o_out = "opt.json";
  oracle_cmd->add_option("--in", o_in, "instance path")->required();
  oracle_cmd->add_option("--out", o_out, "output path");

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand("eval", "run an experiment sweep");
  std::string e_config, e_out = "results.csv";
  bool e_no_timing = false;
  eval_cmd->add_option("--config", e_config, "experiment config JSON")->required();
  eval_cmd->add_option("--out", e_out, "results CSV path");
  eval_cmd->add_flag("--no-timing", e_no_timing,
                     "omit the wall_ms column (byte-stable output)");

  // ---- plot ----
  auto* plot_cmd = app.add_subcommand("plot", "gnuplot-ready columns from a CSV");
  std::string pl_in, pl_x, pl_y, pl_out;
  plot_cmd->add_option("--in", pl_in, "results CSV path")->required();
  plot_cmd->add_option("--x", pl_x, "x column name")->required();
  plot_cmd->add_option("--y", pl_y, "y column name")->required();
  plot_cmd->add_option("--out", pl_out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) {
      gen::GenConfig cfg;
      cfg.n = g_n;
      cfg.k = g_k;
      cfg.m = g_m;
      cfg.avg_deg = g_deg;
      cfg.eps = g_eps;
      cfg.model = gen::model_from_int(g_model);
      cfg.adversary.kind = gen::adversary_from_string(g_adversary);
      cfg.linear = g_linear;
      cfg.graph = gen::graph_kind_from_string(g_graph);
      cfg.fixed_size_corruption = g_fixed;
      cfg.seed = g_seed;
      return cmd_gen(g_graph_file, cfg, g_out, g_truth);
    }

    if (sdp_cmd->parsed()) {
      UGInstance inst = io::instance_from_json(io::read_file(s_in));
      s_cfg.flavor = flavor_from_string(s_flavor);
      sdp::SolveResult res;
      switch (s_cfg.flavor) {
        case SdpFlavor::Standard: res = sdp::solve_standard(inst, s_cfg); break;
        case SdpFlavor::Crude: res = sdp::solve_crude(inst, s_cfg); break;
        case SdpFlavor::ShiftInvariant:
          res = sdp::solve_shift_invariant(inst, s_cfg);
          break;
      }
      io::SolutionFile sf;
      sf.sol = std::move(res.sol);
      sf.objective = res.objective;
      sf.stalled = res.stalled;
      sf.max_norm_dev = res.residuals.max_norm_dev;
      sf.max_orth = res.residuals.max_orth;
      sf.max_nonneg_violation = res.residuals.max_nonneg_violation;
      sf.max_triangle_violation = res.residuals.max_triangle_violation;
      io::write_file(s_out, io::solution_to_json(sf));
      std::fprintf(stderr, "objective %.6g%s\n", res.objective,
                   res.stalled ? " (stalled)" : "");
      return 0;
    }

    if (lp_cmd->parsed()) {
      UGInstance inst = io::instance_from_json(io::read_file(l_in));
      io::SolutionFile sf = io::solution_from_json(io::read_file(l_sdp));
      auto gamma = sdp::super_short_edges(sf.sol, inst, l_eta, l_cstar);
      LPWeights w = lp::solve_lp(gamma, inst);
      io::write_file(l_out, io::weights_to_json(w));
      std::fprintf(stderr, "|Gamma| %d, LP %.6g\n", gamma.size(), w.objective);
      return 0;
    }

    if (round_cmd->parsed()) {
      UGInstance inst = io::instance_from_json(io::read_file(r_in));
      io::SolutionFile sf = io::solution_from_json(io::read_file(r_sdp));
      Labeling lab;
      if (r_method == "lpsdp") {
        if (r_lp.empty())
          throw std::invalid_argument("round lpsdp: --lp weights required");
        LPWeights w = io::weights_from_json(io::read_file(r_lp));
        auto params = rounding::SeparatorParams::make(inst.n, inst.k, r_seed);
        lab = rounding::round_lp_sdp(inst, sf.sol, w, params);
      } else if (r_method == "cmm") {
        Rng rng(r_seed);
        lab = rounding::round_cmm(inst, sf.sol, rounding::kDefaultCmmTrials, rng);
      } else if (r_method == "threshold") {
        lab = rounding::round_threshold(sf.sol);
      } else {
        throw std::invalid_argument("unknown rounding method: " + r_method);
      }
      double val = value(inst, lab);
      io::write_file(r_out, io::labeling_to_json(lab, val));
      std::fprintf(stderr, "value %.6g\n", val);
      return 0;
    }

    if (pipe_cmd->parsed()) {
      UGInstance inst = io::instance_from_json(io::read_file(p_in));
      pipeline::PipelineConfig cfg;
      cfg.seed = p_seed;
      cfg.eta = p_eta;
      cfg.cstar = p_cstar;
      pipeline::PipelineResult res;
      switch (p_model) {
        case 1: res = pipeline::solve_model1(inst, cfg); break;
        case 2: res = pipeline::solve_model2(inst, cfg); break;
        case 3: res = pipeline::solve_model3(inst, cfg); break;
        default: throw std::invalid_argument("pipeline model must be 1|2|3");
      }
      io::write_file(p_report, res.report.to_json());
      if (!p_out.empty())
        io::write_file(p_out, io::labeling_to_json(res.labeling, res.report.value));
      std::fprintf(stderr, "value %.6g\n", res.report.value);
      return 0;
    }

    if (dist_cmd->parsed()) {
      UGInstance inst = io::instance_from_json(io::read_file(d_in));
      if (!d_truth.empty()) {
        CorruptionRecord rec = io::truth_from_json(io::read_file(d_truth));
        if (rec.model != 2)
          std::fprintf(stderr,
                       "warning: distinguish expects the adversarial-edges/"
                       "random-constraints model; sidecar says model %d\n",
                       rec.model);
      }
      pipeline::PipelineConfig cfg;
      cfg.seed = d_seed;
      auto res = pipeline::distinguish(inst, d_eps, cfg);
      io::write_file(d_report, res.to_json());
      std::fprintf(stderr, "objective %.6g, threshold %.6g -> %s\n",
                   res.sdp_objective, res.threshold,
                   res.verdict == pipeline::Verdict::SemiRandomUnsat
                       ? "semi-random-unsat"
                       : "almost-satisfiable");
      return 0;
    }

    if (oracle_cmd->parsed()) {
      UGInstance inst = io::instance_from_json(io::read_file(o_in));
      auto [lab, val] = oracle::brute_force_opt(inst);
      io::write_file(o_out, io::labeling_to_json(lab, val));
      std::fprintf(stderr, "optimum %.6g\n", val);
      return 0;
    }

    if (eval_cmd->parsed()) {
      auto cfg = harness::ExperimentConfig::from_json(io::read_file(e_config));
      auto table = harness::run_experiment(cfg);
      io::write_file(e_out, table.to_csv(!e_no_timing));
      int failures = 0;
      for (const auto& id : cfg.checks) {
        auto check = harness::check_theorem_stats(table, id);
        std::printf("[%s] %s margin %+0.4f  %s\n",
                    check.pass ? "PASS" : "FAIL", check.id.c_str(),
                    check.margin, check.detail.c_str());
        failures += check.pass ? 0 : 1;
      }
      return failures == 0 ? 0 : 1;
    }

    if (plot_cmd->parsed()) {
      std::string csv = io::read_file(pl_in);
      std::istringstream in(csv);
      std::string header;
      std::getline(in, header);
      if (!header.empty() && header.back() == '\r') header.pop_back();
      std::vector<std::string> cols;
      std::istringstream hs(header);
      std::string col;
      while (std::getline(hs, col, ',')) cols.push_back(col);
      auto find_col = [&](const std::string& name) {
        for (std::size_t i = 0; i < cols.size(); ++i)
          if (cols[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("plot: no column named " + name);
      };
      int xi = find_col(pl_x), yi = find_col(pl_y);
      std::string out = "# " + pl_x + " " + pl_y + "\n";
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (static_cast<int>(fields.size()) <= std::max(xi, yi)) continue;
        out += fields[static_cast<std::size_t>(xi)] + " " +
               fields[static_cast<std::size_t>(yi)] + "\n";
      }
      if (pl_out.empty())
        std::fputs(out.c_str(), stdout);
      else
        io::write_file(pl_out, out);
      return 0;
    }
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 0;
}

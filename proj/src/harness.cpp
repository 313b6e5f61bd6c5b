#include "ug/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace ug::harness {

using nlohmann::json;

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
    throw std::invalid_argument("experiment config: bad format_version");
  ExperimentConfig cfg;
  cfg.master_seed = j.value("master_seed", 1ULL);
  cfg.default_reps = j.value("default_reps", 1);
  if (j.contains("checks"))
    cfg.checks = j["checks"].get<std::vector<std::string>>();
  for (const auto& jc : j.at("cells")) {
    CellConfig c;
    c.name = jc.value("name", "");
    c.pipeline = jc.value("pipeline", "model1");
    c.model = jc.value("model", 1);
    c.n = jc.at("n").get<int>();
    c.k = jc.at("k").get<int>();
    c.m = jc.value("m", -1);
    c.deg = jc.value("deg", -1.0);
    c.eps = jc.value("eps", 0.0);
    c.eta = jc.value("eta", 0.2);
    c.cstar = jc.value("cstar", 1.0);
    c.distinguish_eps = jc.value("distinguish_eps", -1.0);
    c.adversary = jc.value("adversary", "random-replacement");
    c.linear = jc.value("linear", false);
    c.graph = jc.value("graph", "gnm");
    c.fixed_size_corruption = jc.value("fixed_size_corruption", false);
    c.reps = jc.value("reps", 0);
    c.max_epochs = jc.value("max_epochs", 0);
    c.dim = jc.value("dim", 0);
    c.tol_feas = jc.value("tol_feas", 0.0);
    c.tol_opt = jc.value("tol_opt", 0.0);
    cfg.cells.push_back(std::move(c));
  }
  return cfg;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

ResultRow run_cell_rep(const ExperimentConfig& exp, const CellConfig& cell,
                       int cell_idx, int rep) {
  ResultRow row;
  row.cell = cell_idx;
  row.name = cell.name;
  row.rep = rep;
  row.seed = derive_seed(exp.master_seed, static_cast<std::uint64_t>(cell_idx),
                         static_cast<std::uint64_t>(rep));
  row.model = cell.model;
  row.pipeline = cell.pipeline;
  row.n = cell.n;
  row.k = cell.k;
  row.eps = cell.eps;
  row.eta = cell.eta;
  row.linear = cell.linear;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    gen::GenConfig gcfg;
    gcfg.n = cell.n;
    gcfg.k = cell.k;
    gcfg.m = cell.m;
    gcfg.avg_deg = cell.deg;
    gcfg.eps = cell.eps;
    gcfg.model = gen::model_from_int(cell.model);
    gcfg.adversary.kind = gen::adversary_from_string(cell.adversary);
    gcfg.linear = cell.linear;
    gcfg.graph = gen::graph_kind_from_string(cell.graph);
    gcfg.fixed_size_corruption = cell.fixed_size_corruption;
    gcfg.seed = row.seed;
    auto [inst, truth] = gen::generate(gcfg);
    row.m = inst.edge_count();
    if (truth.planted) row.planted_value = value(inst, *truth.planted);

    pipeline::PipelineConfig pcfg;
    pcfg.seed = derive_seed(row.seed, 0x9a9a);
    pcfg.eta = cell.eta;
    pcfg.cstar = cell.cstar;
    if (cell.max_epochs > 0) pcfg.sdp.max_epochs = cell.max_epochs;
    if (cell.dim > 0) pcfg.sdp.dim = cell.dim;
    if (cell.tol_feas > 0) pcfg.sdp.tol_feas = cell.tol_feas;
    if (cell.tol_opt > 0) pcfg.sdp.tol_opt = cell.tol_opt;

    if (cell.pipeline == "model1") {
      auto res = pipeline::solve_model1(inst, pcfg);
      row.value = res.report.value;
      row.sdp_objective = res.report.sdp_objective;
      row.sdp_stalled = res.report.sdp_stalled;
      row.gamma_size = res.report.gamma_size;
      row.lp_value = res.report.lp_value;
      if (truth.planted && res.gamma) {
        row.planted_short_frac =
            static_cast<double>(sdp::layer_restriction_count(
                *res.gamma, inst, *truth.planted)) /
            std::max(1, inst.edge_count());
        row.lp_planted_ok =
            res.report.lp_value >=
                    (1.0 - cell.eps - cell.eta) * inst.edge_count()
                ? 1
                : 0;
      }
    } else if (cell.pipeline == "model2") {
      auto res = pipeline::solve_model2(inst, pcfg);
      row.value = res.report.value;
      row.sdp_objective = res.report.sdp_objective;
      row.sdp_objective_pruned = res.report.sdp_objective_pruned;
      row.sdp_stalled = res.report.sdp_stalled;
      row.removed_edges = res.report.removed_edges;
      if (!truth.corrupted.empty()) {
        std::set<int> removed(res.report.removed_edge_ids.begin(),
                              res.report.removed_edge_ids.end());
        int overlap = 0;
        for (int e : truth.corrupted) overlap += removed.count(e) ? 1 : 0;
        row.corrupted_long_frac =
            static_cast<double>(overlap) /
            static_cast<double>(truth.corrupted.size());
      }
    } else if (cell.pipeline == "model3") {
      auto res = pipeline::solve_model3(inst, pcfg);
      row.value = res.report.value;
      row.sdp_objective = res.report.sdp_objective;
      row.sdp_stalled = res.report.sdp_stalled;
    } else if (cell.pipeline == "distinguish") {
      double deps = cell.distinguish_eps >= 0 ? cell.distinguish_eps : cell.eps;
      auto res = pipeline::distinguish(inst, deps, pcfg);
      row.sdp_objective = res.sdp_objective;
      row.sdp_stalled = res.sdp_stalled;
      row.distinguish_threshold = res.threshold;
      row.verdict = res.verdict == pipeline::Verdict::SemiRandomUnsat
                        ? "semi-random-unsat"
                        : "almost-satisfiable";
    } else if (cell.pipeline == "none") {
      // Generation-only cell: planted_value and m are the outputs.
    } else {
      throw std::invalid_argument("unknown pipeline: " + cell.pipeline);
    }
    row.status = "ok";
  } catch (const std::exception& ex) {
    row.status = "error";
    row.error = ex.what();
  }
  const auto t1 = std::chrono::steady_clock::now();
  row.wall_ms =
      std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() /
      1000.0;
  return row;
}

int pool_size() {
  if (const char* env = std::getenv("UG_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

ResultsTable run_experiment(const ExperimentConfig& cfg) {
  struct Task {
    int cell;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cfg.cells.size(); ++c) {
    int reps = cfg.cells[c].reps > 0 ? cfg.cells[c].reps : cfg.default_reps;
    for (int r = 0; r < reps; ++r)
      tasks.push_back({static_cast<int>(c), r});
  }
  ResultsTable table;
  table.rows.resize(tasks.size());

  const int workers = std::min<int>(pool_size(), std::max<std::size_t>(tasks.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      table.rows[t] = run_cell_rep(cfg, cfg.cells[static_cast<std::size_t>(
                                            tasks[t].cell)],
                                   tasks[t].cell, tasks[t].rep);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) threads.emplace_back(work);
    for (auto& th : threads) th.join();
  }
  return table;
}

std::string ResultsTable::to_csv(bool include_timing) const {
  std::string out =
      "cell,name,rep,seed,model,pipeline,n,k,m,eps,eta,linear,status,error,"
      "value,planted_value,sdp_objective,sdp_objective_pruned,sdp_stalled,"
      "gamma_size,lp_value,lp_planted_ok,removed_edges,corrupted_long_frac,"
      "planted_short_frac,verdict,distinguish_threshold";
  if (include_timing) out += ",wall_ms";
  out += "\r\n";

  auto emit = [&](const ResultRow& r, bool timing) {
    out += std::to_string(r.cell) + "," + csv_quote(r.name) + "," +
           std::to_string(r.rep) + "," + std::to_string(r.seed) + "," +
           std::to_string(r.model) + "," + csv_quote(r.pipeline) + "," +
           std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           std::to_string(r.m) + "," + fmt_double(r.eps) + "," +
           fmt_double(r.eta) + "," + (r.linear ? "1" : "0") + "," +
           csv_quote(r.status) + "," + csv_quote(r.error) + "," +
           fmt_double(r.value) + "," + fmt_double(r.planted_value) + "," +
           fmt_double(r.sdp_objective) + "," +
           fmt_double(r.sdp_objective_pruned) + "," +
           (r.sdp_stalled ? "1" : "0") + "," + std::to_string(r.gamma_size) +
           "," + fmt_double(r.lp_value) + "," +
           std::to_string(r.lp_planted_ok) + "," +
           std::to_string(r.removed_edges) + "," +
           fmt_double(r.corrupted_long_frac) + "," +
           fmt_double(r.planted_short_frac) + "," + csv_quote(r.verdict) +
           "," + fmt_double(r.distinguish_threshold);
    if (timing) out += "," + fmt_double(r.wall_ms);
    out += "\r\n";
  };
  for (const auto& r : rows) emit(r, include_timing);

  // Aggregate rows: mean and stddev of the numeric columns per cell.
  std::map<int, std::vector<const ResultRow*>> by_cell;
  for (const auto& r : rows)
    if (r.status == "ok") by_cell[r.cell].push_back(&r);
  for (const auto& [cell, cell_rows] : by_cell) {
    auto stat = [&](auto getter, bool stddev) {
      double mean = 0.0;
      for (const auto* r : cell_rows) mean += getter(*r);
      mean /= static_cast<double>(cell_rows.size());
      if (!stddev) return mean;
      double var = 0.0;
      for (const auto* r : cell_rows) {
        double d = getter(*r) - mean;
        var += d * d;
      }
      var /= static_cast<double>(cell_rows.size());
      return std::sqrt(var);
    };
    for (bool stddev : {false, true}) {
      ResultRow agg;
      agg.cell = cell;
      agg.name = cell_rows.front()->name;
      agg.rep = -1;
      agg.seed = 0;
      agg.model = cell_rows.front()->model;
      agg.pipeline = cell_rows.front()->pipeline;
      agg.n = cell_rows.front()->n;
      agg.k = cell_rows.front()->k;
      agg.m = cell_rows.front()->m;
      agg.eps = cell_rows.front()->eps;
      agg.eta = cell_rows.front()->eta;
      agg.linear = cell_rows.front()->linear;
      agg.status = stddev ? "aggregate-stddev" : "aggregate-mean";
      agg.value = stat([](const ResultRow& r) { return r.value; }, stddev);
      agg.planted_value =
          stat([](const ResultRow& r) { return r.planted_value; }, stddev);
      agg.sdp_objective =
          stat([](const ResultRow& r) { return r.sdp_objective; }, stddev);
      agg.sdp_objective_pruned = stat(
          [](const ResultRow& r) { return r.sdp_objective_pruned; }, stddev);
      agg.gamma_size = 0;
      agg.lp_value = stat([](const ResultRow& r) { return r.lp_value; }, stddev);
      agg.removed_edges = 0;
      agg.corrupted_long_frac = stat(
          [](const ResultRow& r) { return r.corrupted_long_frac; }, stddev);
      agg.planted_short_frac = stat(
          [](const ResultRow& r) { return r.planted_short_frac; }, stddev);
      agg.wall_ms = stat([](const ResultRow& r) { return r.wall_ms; }, stddev);
      emit(agg, include_timing);
    }
  }
  return out;
}

CheckResult check_theorem_stats(const ResultsTable& results,
                                const std::string& theorem_id) {
  CheckResult out;
  out.id = theorem_id;

  auto rows_where = [&](auto pred) {
    std::vector<const ResultRow*> sel;
    for (const auto& r : results.rows)
      if (r.status == "ok" && pred(r)) sel.push_back(&r);
    return sel;
  };
  auto require_rows = [&](const std::vector<const ResultRow*>& sel,
                          const char* what) {
    if (sel.empty())
      throw std::invalid_argument(std::string("check_theorem_stats(") +
                                  theorem_id + "): no rows with " + what);
  };
  auto by_cell = [&](const std::vector<const ResultRow*>& sel) {
    std::map<int, std::vector<const ResultRow*>> cells;
    for (const auto* r : sel) cells[r->cell].push_back(r);
    return cells;
  };
  char buf[256];

  if (theorem_id == "thm3.2") {
    // Fraction of planted-layer edges that are super-short: >= 0.8 in >= 90%
    // of seeds, per cell.
    auto sel = rows_where([](const ResultRow& r) {
      return r.pipeline == "model1" && r.planted_short_frac >= 0.0;
    });
    require_rows(sel, "model1 planted_short_frac");
    double worst = 1.0;
    bool stalled_any = false;
    for (const auto& [cell, cr] : by_cell(sel)) {
      int good = 0;
      for (const auto* r : cr) {
        good += r->planted_short_frac >= 0.8 ? 1 : 0;
        stalled_any = stalled_any || r->sdp_stalled;
      }
      worst = std::min(worst, static_cast<double>(good) /
                                  static_cast<double>(cr.size()));
    }
    out.pass = worst >= 0.9;
    out.margin = worst - 0.9;
    std::snprintf(buf, sizeof(buf),
                  "worst-cell seed fraction with short-frac>=0.8: %.3f%s",
                  worst, stalled_any ? " (solver-stall caveat)" : "");
    out.detail = buf;
  } else if (theorem_id == "thm3.1") {
    auto sel =
        rows_where([](const ResultRow& r) { return r.pipeline == "model1"; });
    require_rows(sel, "model1 value");
    double worst_mean = 1.0;
    for (const auto& [cell, cr] : by_cell(sel)) {
      double mean = 0.0;
      for (const auto* r : cr) mean += r->value;
      mean /= static_cast<double>(cr.size());
      worst_mean = std::min(worst_mean, mean);
    }
    const double bar = 0.75, floor = 0.49;
    out.pass = worst_mean >= bar && worst_mean >= floor;
    out.margin = worst_mean - bar;
    std::snprintf(buf, sizeof(buf),
                  "worst-cell mean value %.4f (bar %.2f, theorem floor %.2f)",
                  worst_mean, bar, floor);
    out.detail = buf;
  } else if (theorem_id == "thm4.2" || theorem_id == "thm5.1") {
    const bool want_linear = theorem_id == "thm5.1";
    auto sel = rows_where([&](const ResultRow& r) {
      return r.pipeline == "model2" && r.linear == want_linear &&
             r.corrupted_long_frac >= 0.0;
    });
    require_rows(sel, want_linear ? "linear model2 corrupted_long_frac"
                                  : "model2 corrupted_long_frac");
    double worst = 1.0;
    for (const auto& [cell, cr] : by_cell(sel)) {
      int good = 0;
      for (const auto* r : cr) good += r->corrupted_long_frac >= 0.7 ? 1 : 0;
      worst = std::min(worst, static_cast<double>(good) /
                                  static_cast<double>(cr.size()));
    }
    out.pass = worst >= 0.9;
    out.margin = worst - 0.9;
    std::snprintf(buf, sizeof(buf),
                  "worst-cell seed fraction with long-frac>=0.7: %.3f", worst);
    out.detail = buf;
  } else if (theorem_id == "thm4.1") {
    auto sel =
        rows_where([](const ResultRow& r) { return r.pipeline == "model2"; });
    require_rows(sel, "model2 value");
    double margin = 1.0;
    double worst_mean = 1.0, worst_bar = 0.0;
    for (const auto& [cell, cr] : by_cell(sel)) {
      double mean = 0.0;
      for (const auto* r : cr) mean += r->value;
      mean /= static_cast<double>(cr.size());
      double bar = 1.0 - 3.0 * cr.front()->eps;
      if (mean - bar < margin) {
        margin = mean - bar;
        worst_mean = mean;
        worst_bar = bar;
      }
    }
    out.pass = margin >= 0.0;
    out.margin = margin;
    std::snprintf(buf, sizeof(buf), "worst-cell mean value %.4f (bar %.4f)",
                  worst_mean, worst_bar);
    out.detail = buf;
  } else if (theorem_id == "thm6.1") {
    auto sel =
        rows_where([](const ResultRow& r) { return r.pipeline == "model3"; });
    require_rows(sel, "model3 value");
    double margin = 1.0;
    double worst_mean = 1.0, worst_bar = 0.0;
    for (const auto& [cell, cr] : by_cell(sel)) {
      double mean = 0.0;
      for (const auto* r : cr) mean += r->value;
      mean /= static_cast<double>(cr.size());
      double bar = 1.0 - 4.0 * cr.front()->eps;
      if (mean - bar < margin) {
        margin = mean - bar;
        worst_mean = mean;
        worst_bar = bar;
      }
    }
    out.pass = margin >= 0.0;
    out.margin = margin;
    std::snprintf(buf, sizeof(buf), "worst-cell mean value %.4f (bar %.4f)",
                  worst_mean, worst_bar);
    out.detail = buf;
  } else if (theorem_id == "thm7.1") {
    auto sel = rows_where(
        [](const ResultRow& r) { return r.pipeline == "distinguish"; });
    require_rows(sel, "distinguish objective");
    double margin = 1.0;
    std::string detail;
    for (const auto& [cell, cr] : by_cell(sel)) {
      const bool satisfiable_cell = cr.front()->eps == 0.0;
      int good = 0;
      for (const auto* r : cr) {
        bool above = r->sdp_objective >= r->distinguish_threshold;
        good += (satisfiable_cell ? !above : above) ? 1 : 0;
      }
      double frac =
          static_cast<double>(good) / static_cast<double>(cr.size());
      double bar = satisfiable_cell ? 1.0 : 0.95;
      margin = std::min(margin, frac - bar);
      std::snprintf(buf, sizeof(buf), "cell %d (%s): %.3f vs bar %.2f; ", cell,
                    satisfiable_cell ? "satisfiable" : "semi-random", frac, bar);
      detail += buf;
    }
    out.pass = margin >= 0.0;
    out.margin = margin;
    out.detail = detail;
  } else {
    throw std::invalid_argument("check_theorem_stats: unknown id " + theorem_id);
  }
  return out;
}

}  // namespace ug::harness

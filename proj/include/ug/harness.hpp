#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ug/generators.hpp"
#include "ug/pipeline.hpp"

namespace ug::harness {

// One grid cell: generation parameters plus which pipeline to run on each
// generated instance.
struct CellConfig {
  std::string name;
  std::string pipeline = "model1";  // model1|model2|model3|distinguish|none
  int model = 1;
  int n = 0;
  int k = 2;
  int m = -1;
  double deg = -1.0;
  double eps = 0.0;
  double eta = 0.2;             // model-1 super-short parameter
  double cstar = 1.0;
  double distinguish_eps = -1.0;  // threshold parameter; defaults to eps
  std::string adversary = "random-replacement";
  bool linear = false;
  std::string graph = "gnm";
  bool fixed_size_corruption = false;
  int reps = 0;  // 0 -> default_reps
  // SDP overrides.
  int max_epochs = 0;   // 0 -> library default
  int dim = 0;
  double tol_feas = 0.0;
  double tol_opt = 0.0;
};

struct ExperimentConfig {
  std::uint64_t master_seed = 1;
  int default_reps = 1;
  std::vector<CellConfig> cells;
  std::vector<std::string> checks;  // theorem ids evaluated by the eval CLI

  static ExperimentConfig from_json(const std::string& text);
};

struct ResultRow {
  int cell = 0;
  std::string name;
  int rep = 0;
  std::uint64_t seed = 0;
  int model = 0;
  std::string pipeline;
  int n = 0, k = 0, m = 0;
  double eps = 0.0, eta = 0.0;
  bool linear = false;
  std::string status;  // "ok" or "error"
  std::string error;
  double value = 0.0;
  double planted_value = 0.0;
  double sdp_objective = 0.0;
  double sdp_objective_pruned = 0.0;
  bool sdp_stalled = false;
  int gamma_size = 0;
  double lp_value = 0.0;
  int lp_planted_ok = -1;  // 1 if LP >= (1-eps-eta)|E|, -1 when n/a
  int removed_edges = 0;
  double corrupted_long_frac = -1.0;  // fraction of E_eps classified long
  double planted_short_frac = -1.0;   // |Gamma^0|/|E| for model-1 runs
  std::string verdict;                // distinguish cells
  double distinguish_threshold = 0.0;
  double wall_ms = 0.0;
};

struct ResultsTable {
  std::vector<ResultRow> rows;  // data rows in (cell, rep) order

  // RFC-4180 CSV; aggregate mean/stddev rows per cell follow the data rows.
  // Timing is measurement rather than result, so byte-stable output omits it.
  std::string to_csv(bool include_timing) const;
};

// Runs every (cell, rep) in a worker pool (UG_THREADS caps the pool size;
// single-threaded when 1). Row content is independent of the pool size.
ResultsTable run_experiment(const ExperimentConfig& cfg);

struct CheckResult {
  std::string id;
  bool pass = false;
  double margin = 0.0;  // distance to the bar (positive = satisfied)
  std::string detail;
};

// Desk-scale empirical checks keyed by theorem id:
//   thm3.1 thm3.2 thm4.1 thm4.2 thm5.1 thm6.1 thm7.1
// Throws std::invalid_argument when the table lacks the rows/columns the
// check needs.
CheckResult check_theorem_stats(const ResultsTable& results,
                                const std::string& theorem_id);

}  // namespace ug::harness

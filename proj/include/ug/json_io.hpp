#pragma once

#include <string>

#include "ug/generators.hpp"
#include "ug/instance.hpp"
#include "ug/lp_types.hpp"
#include "ug/solution.hpp"

namespace ug::io {

// Instance format (format_version 1):
//   {"format_version":1,"n":..,"k":..,"linear":..,
//    "edges":[{"u":..,"v":..,"perm":[..]} | {"u":..,"v":..,"shift":..}]}
// Linear instances use the shift form, general instances the perm form.
std::string instance_to_json(const UGInstance& inst);
UGInstance instance_from_json(const std::string& text);

// Truth sidecar (format_version 1): E_eps indices, pre-corruption
// constraints, planted labeling, model id and eps.
std::string truth_to_json(const CorruptionRecord& rec, bool linear);
CorruptionRecord truth_from_json(const std::string& text);

struct SolutionFile {
  VectorSolution sol;
  double objective = 0.0;
  bool stalled = false;
  // Residuals by family name, NaN when not applicable.
  double max_norm_dev = 0.0;
  double max_orth = 0.0;
  double max_nonneg_violation = 0.0;
  double max_triangle_violation = 0.0;
};

std::string solution_to_json(const SolutionFile& s);
SolutionFile solution_from_json(const std::string& text);

std::string weights_to_json(const LPWeights& w);
LPWeights weights_from_json(const std::string& text);

std::string labeling_to_json(const Labeling& lab, double value_hint = -1.0);
Labeling labeling_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace ug::io

#include "ug/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ug::io {

using nlohmann::json;

namespace {

void require_version(const json& j, const char* what) {
  if (!j.contains("format_version") || j["format_version"].get<int>() != 1)
    throw std::invalid_argument(std::string(what) +
                                ": missing or unsupported format_version");
}

json edge_to_json(const ConstraintEdge& ed, bool linear) {
  json je;
  je["u"] = ed.u;
  je["v"] = ed.v;
  if (linear)
    je["shift"] = ed.shift;
  else
    je["perm"] = ed.perm;
  return je;
}

ConstraintEdge edge_from_json(const json& je, int k, bool linear) {
  ConstraintEdge ed;
  ed.u = je.at("u").get<int>();
  ed.v = je.at("v").get<int>();
  if (je.contains("shift")) {
    int s = je["shift"].get<int>();
    ed.shift = ((s % k) + k) % k;
    ed.perm.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      ed.perm[static_cast<std::size_t>(i)] = (i + ed.shift) % k;
  } else {
    ed.perm = je.at("perm").get<std::vector<int>>();
    if (linear) {
      // Accept perm-form edges in linear files as long as they are shifts.
      if (ed.perm.empty()) throw std::invalid_argument("edge: empty perm");
      int s = ed.perm[0];
      ed.shift = s;
    }
  }
  return ed;
}

}  // namespace

std::string instance_to_json(const UGInstance& inst) {
  json j;
  j["format_version"] = 1;
  j["n"] = inst.n;
  j["k"] = inst.k;
  j["linear"] = inst.is_linear;
  json edges = json::array();
  for (const auto& ed : inst.edges) edges.push_back(edge_to_json(ed, inst.is_linear));
  j["edges"] = std::move(edges);
  return j.dump();
}

UGInstance instance_from_json(const std::string& text) {
  json j = json::parse(text);
  require_version(j, "instance");
  UGInstance inst;
  inst.n = j.at("n").get<int>();
  inst.k = j.at("k").get<int>();
  inst.is_linear = j.at("linear").get<bool>();
  for (const auto& je : j.at("edges"))
    inst.edges.push_back(edge_from_json(je, inst.k, inst.is_linear));
  inst.validate();
  return inst;
}

std::string truth_to_json(const CorruptionRecord& rec, bool linear) {
  json j;
  j["format_version"] = 1;
  j["model"] = rec.model;
  j["eps"] = rec.eps;
  j["corrupted"] = rec.corrupted;
  json originals = json::array();
  for (std::size_t t = 0; t < rec.originals.size(); ++t) {
    json je = edge_to_json(rec.originals[t], linear);
    je["edge"] = rec.corrupted[t];
    originals.push_back(std::move(je));
  }
  j["original_constraints"] = std::move(originals);
  if (rec.planted)
    j["planted"] = rec.planted->x;
  return j.dump();
}

CorruptionRecord truth_from_json(const std::string& text) {
  json j = json::parse(text);
  require_version(j, "truth");
  CorruptionRecord rec;
  rec.model = j.value("model", 0);
  rec.eps = j.value("eps", 0.0);
  rec.corrupted = j.at("corrupted").get<std::vector<int>>();
  for (const auto& je : j.at("original_constraints")) {
    ConstraintEdge ed;
    ed.u = je.at("u").get<int>();
    ed.v = je.at("v").get<int>();
    if (je.contains("shift")) {
      ed.shift = je["shift"].get<int>();
    }
    if (je.contains("perm")) ed.perm = je["perm"].get<std::vector<int>>();
    else if (ed.shift >= 0) {
      // Reconstruct the permutation lazily on use; we need k, which the
      // caller knows. Store only the shift here.
    }
    rec.originals.push_back(std::move(ed));
  }
  if (j.contains("planted")) {
    Labeling lab;
    lab.x = j["planted"].get<std::vector<int>>();
    rec.planted = std::move(lab);
  }
  return rec;
}

std::string solution_to_json(const SolutionFile& s) {
  json j;
  j["format_version"] = 1;
  j["flavor"] = to_string(s.sol.flavor);
  j["n"] = s.sol.n;
  j["k"] = s.sol.k;
  j["d"] = s.sol.d;
  j["objective"] = s.objective;
  j["stalled"] = s.stalled;
  json res;
  res["max_norm_dev"] = s.max_norm_dev;
  res["max_orth"] = s.max_orth;
  res["max_nonneg_violation"] = s.max_nonneg_violation;
  res["max_triangle_violation"] = s.max_triangle_violation;
  j["residuals"] = std::move(res);
  j["vectors"] = s.sol.data;
  return j.dump();
}

SolutionFile solution_from_json(const std::string& text) {
  json j = json::parse(text);
  require_version(j, "solution");
  SolutionFile s;
  s.sol.flavor = flavor_from_string(j.at("flavor").get<std::string>());
  s.sol.n = j.at("n").get<int>();
  s.sol.k = j.at("k").get<int>();
  s.sol.d = j.at("d").get<int>();
  s.objective = j.at("objective").get<double>();
  s.stalled = j.value("stalled", false);
  if (j.contains("residuals")) {
    const auto& res = j["residuals"];
    s.max_norm_dev = res.value("max_norm_dev", 0.0);
    s.max_orth = res.value("max_orth", 0.0);
    s.max_nonneg_violation = res.value("max_nonneg_violation", 0.0);
    s.max_triangle_violation = res.value("max_triangle_violation", 0.0);
  }
  s.sol.data = j.at("vectors").get<std::vector<double>>();
  const std::size_t expect = static_cast<std::size_t>(s.sol.n) * s.sol.k * s.sol.d;
  if (s.sol.data.size() != expect)
    throw std::invalid_argument("solution: vector array has wrong length");
  return s;
}

std::string weights_to_json(const LPWeights& w) {
  json j;
  j["format_version"] = 1;
  j["n"] = w.n;
  j["k"] = w.k;
  j["objective"] = w.objective;
  j["x"] = w.x;
  return j.dump();
}

LPWeights weights_from_json(const std::string& text) {
  json j = json::parse(text);
  require_version(j, "weights");
  LPWeights w;
  w.n = j.at("n").get<int>();
  w.k = j.at("k").get<int>();
  w.objective = j.at("objective").get<double>();
  w.x = j.at("x").get<std::vector<double>>();
  if (w.x.size() != static_cast<std::size_t>(w.n) * w.k)
    throw std::invalid_argument("weights: array has wrong length");
  return w;
}

std::string labeling_to_json(const Labeling& lab, double value_hint) {
  json j;
  j["format_version"] = 1;
  j["labels"] = lab.x;
  if (value_hint >= 0.0) j["value"] = value_hint;
  return j.dump();
}

Labeling labeling_from_json(const std::string& text) {
  json j = json::parse(text);
  require_version(j, "labeling");
  Labeling lab;
  lab.x = j.at("labels").get<std::vector<int>>();
  return lab;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace ug::io

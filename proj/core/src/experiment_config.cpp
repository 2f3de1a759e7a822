// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "agedbf/experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "agedbf/error.hpp"
#include "json.hpp"

namespace agedbf {

namespace {

using nlohmann::json;

const std::set<std::string>& known_fields() {
  static const std::set<std::string> fields = {
      "schemes", "m_tx", "n_rx", "k_groups", "velocity_mps", "carrier_hz", "lag_s", "p_per",
      "p_dec", "p_out", "budget_mode", "bounds", "trials", "channel_draws", "seed", "output_path",
      "bins", "threshold", "power_cap", "normalization", "tol", "hardened_shortcut_min_m", "mrc_antenna"};
  return fields;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field, "field '" + field + "': " + what);
}

const json& require(const json& doc, const std::string& field) {
  const auto it = doc.find(field);
  if (it == doc.end()) {
    fail(field, "missing required field");
  }
  return *it;
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) {
    fail(field, "expected a number");
  }
  return v.get<double>();
}

std::int64_t get_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) {
    return v.get<std::int64_t>();
  }
  // Accept integral floats such as 1e6.
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) {
      return static_cast<std::int64_t>(d);
    }
  }
  fail(field, "expected an integer");
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) {
    fail(field, "expected a string");
  }
  return v.get<std::string>();
}

template <class T, class F>
std::vector<T> scalar_or_list(const json& v, const std::string& field, F convert) {
  std::vector<T> out;
  if (v.is_array()) {
    if (v.empty()) {
      fail(field, "list must not be empty");
    }
    for (const auto& e : v) {
      out.push_back(convert(e, field));
    }
  } else {
    out.push_back(convert(v, field));
  }
  return out;
}

int to_int(const json& v, const std::string& field) {
  const auto x = get_integer(v, field);
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    fail(field, "integer out of range");
  }
  return static_cast<int>(x);
}

ThresholdModel parse_threshold(const json& v, const std::filesystem::path& base_dir) {
  if (!v.is_object()) {
    fail("threshold", "expected an object");
  }
  const std::string kind = v.contains("kind") ? get_string(v["kind"], "threshold.kind") : "normal_approximation";
  for (const auto& [key, _] : v.items()) {
    if (key != "kind" && key != "blocklength" && key != "rate" && key != "path") {
      fail("threshold." + key, "unknown field");
    }
  }
  try {
    if (kind == "normal_approximation") {
      const int n = v.contains("blocklength") ? to_int(v["blocklength"], "threshold.blocklength") : 128;
      const double r = v.contains("rate") ? get_number(v["rate"], "threshold.rate") : 0.5;
      return ThresholdModel::normal_approximation(n, r);
    }
    if (kind == "lookup_table") {
      std::filesystem::path p = get_string(require(v, "path"), "threshold.path");
      if (p.is_relative()) {
        p = base_dir / p;
      }
      return ThresholdModel::from_csv_file(p.string());
    }
  } catch (const std::invalid_argument& e) {
    fail("threshold", e.what());
  }
  fail("threshold.kind", "expected 'normal_approximation' or 'lookup_table'");
}

bool needs_schemes(Operation op) { return op != Operation::kRecycling; }
bool needs_trials(Operation op) { return op == Operation::kOutage || op == Operation::kRecycling; }
bool needs_draws(Operation op) {
  return op == Operation::kPdf || op == Operation::kHardening || op == Operation::kPowerPdec ||
         op == Operation::kPowerM || op == Operation::kRecycling;
}
bool needs_p_dec(Operation op) { return op == Operation::kPowerPdec || op == Operation::kPowerM; }
bool needs_p_out(Operation op) { return !needs_p_dec(op); }

ExperimentConfig parse_document(std::string_view text, Operation op, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("<document>", "config must be a JSON object");
  }
  for (const auto& [key, _] : doc.items()) {
    if (known_fields().count(key) == 0) {
      fail(key, "unknown field");
    }
  }

  ExperimentConfig c;
  const auto kind_of = [](const json& e, const std::string& f) {
    try {
      return parse_beamformer_kind(get_string(e, f));
    } catch (const std::invalid_argument& ex) {
      fail(f, ex.what());
    }
  };
  if (needs_schemes(op) || doc.contains("schemes")) {
    c.schemes = scalar_or_list<BeamformerKind>(require(doc, "schemes"), "schemes", kind_of);
  }
  c.m_tx = scalar_or_list<int>(require(doc, "m_tx"), "m_tx", to_int);
  c.n_rx = to_int(require(doc, "n_rx"), "n_rx");
  if (doc.contains("k_groups")) {
    c.k_groups = scalar_or_list<int>(doc["k_groups"], "k_groups", to_int);
  }
  c.velocity_mps = scalar_or_list<double>(require(doc, "velocity_mps"), "velocity_mps", get_number);
  c.carrier_hz = get_number(require(doc, "carrier_hz"), "carrier_hz");
  c.lag_s = get_number(require(doc, "lag_s"), "lag_s");
  if (doc.contains("p_per")) {
    c.p_per = get_number(doc["p_per"], "p_per");
  }
  if (needs_p_dec(op) || doc.contains("p_dec")) {
    c.p_dec = scalar_or_list<double>(require(doc, "p_dec"), "p_dec", get_number);
  }
  if (needs_p_out(op) || doc.contains("p_out")) {
    c.p_out = scalar_or_list<double>(require(doc, "p_out"), "p_out", get_number);
  }
  if (doc.contains("budget_mode")) {
    const auto m = get_string(doc["budget_mode"], "budget_mode");
    if (m == "split") {
      c.budget_mode = BudgetMode::kSplit;
    } else if (m == "pessimistic") {
      c.budget_mode = BudgetMode::kPessimistic;
    } else {
      fail("budget_mode", "expected 'split' or 'pessimistic'");
    }
  }
  if (doc.contains("bounds")) {
    c.bounds = scalar_or_list<BoundKind>(doc["bounds"], "bounds", [](const json& e, const std::string& f) {
      try {
        return parse_bound_kind(get_string(e, f));
      } catch (const std::invalid_argument& ex) {
        fail(f, ex.what());
      }
    });
  }
  if (needs_trials(op) || doc.contains("trials")) {
    c.trials = get_integer(require(doc, "trials"), "trials");
  }
  if (needs_draws(op) || doc.contains("channel_draws")) {
    c.channel_draws = get_integer(require(doc, "channel_draws"), "channel_draws");
  }
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      fail("seed", "expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  c.output_path = doc.contains("output_path") ? get_string(doc["output_path"], "output_path")
                                              : std::string(to_string(op)) + ".csv";
  if (doc.contains("bins")) {
    c.bins = to_int(doc["bins"], "bins");
  }
  if (doc.contains("threshold")) {
    c.threshold = parse_threshold(doc["threshold"], base_dir);
  }
  if (doc.contains("power_cap")) {
    c.power_cap = get_number(doc["power_cap"], "power_cap");
  }
  if (doc.contains("normalization")) {
    const auto n = get_string(doc["normalization"], "normalization");
    if (n == "per_tx_rx") {
      c.normalization = GainNormalization::kPerTxAndRx;
    } else if (n == "per_tx") {
      c.normalization = GainNormalization::kPerTx;
    } else if (n == "none") {
      c.normalization = GainNormalization::kNone;
    } else {
      fail("normalization", "expected 'per_tx_rx', 'per_tx' or 'none'");
    }
  }
  if (doc.contains("tol")) {
    c.tol = get_number(doc["tol"], "tol");
  }
  if (doc.contains("hardened_shortcut_min_m")) {
    c.hardened_shortcut_min_m = to_int(doc["hardened_shortcut_min_m"], "hardened_shortcut_min_m");
  }
  if (doc.contains("mrc_antenna")) {
    c.mrc_antenna = to_int(doc["mrc_antenna"], "mrc_antenna");
  }
  validate_config(c, op);
  return c;
}

}  // namespace

std::string_view to_string(Operation op) {
  switch (op) {
    case Operation::kOutage: return "outage";
    case Operation::kPdf: return "pdf";
    case Operation::kHardening: return "hardening";
    case Operation::kPowerPdec: return "power-pdec";
    case Operation::kPowerM: return "power-m";
    case Operation::kRecycling: return "recycling";
    case Operation::kBoundsCompare: return "bounds-compare";
  }
  return "unknown";
}

Operation parse_operation(std::string_view name) {
  for (auto op : {Operation::kOutage, Operation::kPdf, Operation::kHardening, Operation::kPowerPdec,
                  Operation::kPowerM, Operation::kRecycling, Operation::kBoundsCompare}) {
    if (to_string(op) == name) {
      return op;
    }
  }
  throw std::invalid_argument("unknown operation '" + std::string(name) + "'");
}

std::vector<SchemeSpec> ExperimentConfig::scheme_specs() const {
  std::vector<SchemeSpec> specs;
  for (auto kind : schemes) {
    if (is_gstbc(kind)) {
      for (int k : k_groups) {
        specs.push_back({kind, k});
      }
    } else {
      specs.push_back({kind, 1});
    }
  }
  return specs;
}

ExperimentConfig parse_experiment_config(std::string_view json_text, Operation op) {
  return parse_document(json_text, op, std::filesystem::current_path());
}

ExperimentConfig load_experiment_config(const std::string& path, Operation op) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("<document>", "cannot open config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  const auto dir = std::filesystem::absolute(std::filesystem::path(path)).parent_path();
  return parse_document(text.str(), op, dir);
}

void validate_config(const ExperimentConfig& c, Operation op) {
  const auto in_open_unit = [](double p) { return p > 0.0 && p < 1.0; };
  if (needs_schemes(op) && c.schemes.empty()) {
    fail("schemes", "missing required field");
  }
  if (c.m_tx.empty()) {
    fail("m_tx", "missing required field");
  }
  for (int m : c.m_tx) {
    if (m < 1) {
      fail("m_tx", "must be >= 1");
    }
  }
  if (c.n_rx < 1) {
    fail("n_rx", "must be >= 1");
  }
  const int min_m = *std::min_element(c.m_tx.begin(), c.m_tx.end());
  const bool any_gstbc = std::any_of(c.schemes.begin(), c.schemes.end(), is_gstbc);
  for (int k : c.k_groups) {
    if (k < 1 || (any_gstbc && k > min_m)) {
      fail("k_groups", "must lie in [1, min(m_tx)]");
    }
  }
  if (c.velocity_mps.empty()) {
    fail("velocity_mps", "missing required field");
  }
  for (double v : c.velocity_mps) {
    if (!std::isfinite(v) || v < 0.0) {
      fail("velocity_mps", "must be finite and >= 0");
    }
  }
  if (!std::isfinite(c.carrier_hz) || c.carrier_hz <= 0.0) {
    fail("carrier_hz", "must be finite and > 0");
  }
  if (!std::isfinite(c.lag_s) || c.lag_s < 0.0) {
    fail("lag_s", "must be finite and >= 0");
  }
  if (!in_open_unit(c.p_per)) {
    fail("p_per", "must lie in (0, 1)");
  }
  if (needs_p_dec(op) && c.p_dec.empty()) {
    fail("p_dec", "missing required field");
  }
  for (double p : c.p_dec) {
    if (!(p > 0.0 && p < c.p_per)) {
      fail("p_dec", "must lie in (0, p_per)");
    }
  }
  if (needs_p_out(op) && c.p_out.empty()) {
    fail("p_out", "missing required field");
  }
  for (double p : c.p_out) {
    if (!in_open_unit(p)) {
      fail("p_out", "must lie in (0, 1)");
    }
  }
  if (c.bounds.empty()) {
    fail("bounds", "must not be empty");
  }
  if (needs_trials(op) && c.trials < 1) {
    fail("trials", "missing required field or < 1");
  }
  if (needs_draws(op) && c.channel_draws < 1) {
    fail("channel_draws", "missing required field or < 1");
  }
  if (c.output_path.empty()) {
    fail("output_path", "must not be empty");
  }
  if (c.bins < 1) {
    fail("bins", "must be >= 1");
  }
  if (!(c.power_cap > 0.0)) {
    fail("power_cap", "must be > 0");
  }
  if (!(c.tol > 0.0 && c.tol < 1.0)) {
    fail("tol", "must lie in (0, 1)");
  }
  if (c.hardened_shortcut_min_m < 0) {
    fail("hardened_shortcut_min_m", "must be >= 0");
  }
  if (c.mrc_antenna < 0 || c.mrc_antenna >= min_m) {
    fail("mrc_antenna", "must lie in [0, min(m_tx))");
  }
}

}  // namespace agedbf

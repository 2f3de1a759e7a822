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

#include "agedbf/power_adapt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "agedbf/error.hpp"

namespace agedbf {

namespace {

bool is_probability(double p) { return p > 0.0 && p < 1.0; }

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  const auto last = s.find_last_not_of(" \t\r\n");
  return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("threshold table line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

ReliabilityBudget split_budget(double p_per, double p_dec, BudgetMode mode) {
  if (!is_probability(p_per)) {
    throw std::invalid_argument("split_budget: p_per must lie in (0, 1)");
  }
  ReliabilityBudget b;
  b.p_per = p_per;
  b.mode = mode;
  if (mode == BudgetMode::kPessimistic) {
    b.p_dec = 0.5 * p_per;
    b.p_out = 0.5 * p_per;
    return b;
  }
  if (!(p_dec > 0.0 && p_dec < p_per)) {
    throw std::invalid_argument("split_budget: p_dec must lie in (0, p_per)");
  }
  b.p_dec = p_dec;
  b.p_out = p_per - p_dec;
  return b;
}

ThresholdModel ThresholdModel::normal_approximation(int blocklength, double rate) {
  if (blocklength < 1 || !(rate > 0.0)) {
    throw std::invalid_argument("normal_approximation: blocklength and rate must be positive");
  }
  ThresholdModel m;
  m.kind = Kind::kNormalApproximation;
  m.blocklength = blocklength;
  m.rate = rate;
  return m;
}

ThresholdModel ThresholdModel::lookup_table(std::vector<std::pair<double, double>> rows) {
  if (rows.size() < 2) {
    throw std::invalid_argument("lookup_table: need at least two rows");
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!is_probability(rows[i].first) || !std::isfinite(rows[i].second)) {
      throw std::invalid_argument("lookup_table: p_dec must lie in (0, 1) and isnr0_db be finite");
    }
    if (i > 0 && !(rows[i].first > rows[i - 1].first && rows[i].second < rows[i - 1].second)) {
      throw std::invalid_argument("lookup_table: isnr0_db must strictly decrease as p_dec increases");
    }
  }
  ThresholdModel m;
  m.kind = Kind::kLookupTable;
  m.table = std::move(rows);
  return m;
}

ThresholdModel ThresholdModel::from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "p_dec,isnr0_db") {
    throw std::invalid_argument("threshold table: header must be exactly 'p_dec,isnr0_db'");
  }
  std::vector<std::pair<double, double>> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw std::invalid_argument("threshold table line " + std::to_string(number) + ": expected two columns");
    }
    rows.emplace_back(parse_number(trim(line.substr(0, comma)), number),
                      parse_number(trim(line.substr(comma + 1)), number));
  }
  return lookup_table(std::move(rows));
}

ThresholdModel ThresholdModel::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("threshold table: cannot open '" + path + "'");
  }
  return from_csv(in);
}

double normal_approximation_error(double isnr, int blocklength, double rate) {
  if (!(isnr > 0.0)) {
    throw std::invalid_argument("normal_approximation_error: isnr must be positive");
  }
  const double n = blocklength;
  const double capacity = std::log2(1.0 + isnr);
  const double log2e = std::numbers::log2e;
  const double dispersion = isnr * (isnr + 2.0) / ((isnr + 1.0) * (isnr + 1.0)) * log2e * log2e;
  const double z = (capacity - rate + std::log2(n) / (2.0 * n)) * std::sqrt(n / dispersion);
  return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double isnr_threshold(const ThresholdModel& model, double p_dec) {
  if (!is_probability(p_dec)) {
    throw std::out_of_range("isnr_threshold: p_dec must lie in (0, 1)");
  }
  if (model.kind == ThresholdModel::Kind::kLookupTable) {
    const auto& t = model.table;
    if (t.empty() || p_dec < t.front().first || p_dec > t.back().first) {
      throw std::out_of_range("isnr_threshold: p_dec outside the lookup table");
    }
    auto hi = std::lower_bound(t.begin(), t.end(), p_dec,
                               [](const auto& row, double p) { return row.first < p; });
    if (hi->first == p_dec) {
      return std::pow(10.0, hi->second / 10.0);
    }
    const auto lo = hi - 1;
    const double w = (std::log10(p_dec) - std::log10(lo->first)) / (std::log10(hi->first) - std::log10(lo->first));
    const double db = lo->second + w * (hi->second - lo->second);
    return std::pow(10.0, db / 10.0);
  }

  // The error probability decreases in the iSNR; bisect in log(iSNR).
  double lo = std::log(1e-6);
  double hi = std::log(1e6);
  if (normal_approximation_error(std::exp(hi), model.blocklength, model.rate) > p_dec) {
    throw std::out_of_range("isnr_threshold: p_dec unreachable below 60 dB");
  }
  if (normal_approximation_error(std::exp(lo), model.blocklength, model.rate) <= p_dec) {
    return std::exp(lo);
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (normal_approximation_error(std::exp(mid), model.blocklength, model.rate) <= p_dec) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::exp(hi);
}

PowerDecision transmit_power(double isnr_0, double beta_lb, double cap) {
  if (!(isnr_0 > 0.0) || !std::isfinite(isnr_0)) {
    throw std::invalid_argument("transmit_power: isnr_0 must be finite and positive");
  }
  PowerDecision d;
  d.isnr_0 = isnr_0;
  d.beta_lb = beta_lb;
  if (!(beta_lb > 0.0) || !std::isfinite(beta_lb)) {
    return d;
  }
  d.gamma = isnr_0 / beta_lb;
  d.gamma_db = 10.0 * std::log10(d.gamma);
  d.feasible = !(d.gamma > cap);
  return d;
}

double max_lag(BeamformerKind scheme, double isnr_0, double cap, int n_rx) {
  double factor = 1.0;
  if (scheme == BeamformerKind::kSuperimposedMf) {
    factor = n_rx;
  } else if (scheme != BeamformerKind::kTimeOrthogonalMf) {
    throw std::invalid_argument("max_lag: only the superimposed and time-orthogonal MF are supported");
  }
  if (!(isnr_0 > 0.0) || !(cap > 0.0) || n_rx < 1) {
    throw std::invalid_argument("max_lag: isnr_0, cap and n_rx must be positive");
  }
  const double arg = factor * isnr_0 / cap;
  if (arg > 1.0) {
    throw InfeasibleError("max_lag: power cap is too small at any CSIT age");
  }
  return bessel_j0_inverse(std::sqrt(arg)) / (2.0 * std::numbers::pi);
}

double normalization_factor(BeamformerKind scheme, int m_tx, int n_rx, GainNormalization norm) {
  const double tx = scheme == BeamformerKind::kMrcBaseline ? 1.0 : static_cast<double>(m_tx);
  switch (norm) {
    case GainNormalization::kNone: return 1.0;
    case GainNormalization::kPerTx: return tx;
    case GainNormalization::kPerTxAndRx: return tx * n_rx;
  }
  return 1.0;
}

PowerDecision power_from_distribution(const GainDistribution& dist, BeamformerKind scheme, int m_tx, int n_rx,
                                      const AgingParams& params, double p_out, double isnr_0, double cap,
                                      const PowerAdaptOptions& options) {
  const bool hardens = scheme == BeamformerKind::kSuperimposedMf || scheme == BeamformerKind::kTimeOrthogonalMf;
  const double norm = normalization_factor(scheme, m_tx, n_rx, options.normalization);
  double beta = 0.0;
  if (hardens && options.hardened_shortcut_min_m > 0 && m_tx >= options.hardened_shortcut_min_m) {
    beta = hardened_limit(scheme, n_rx, params) * (static_cast<double>(m_tx) * n_rx) / norm;
  } else {
    const auto bound = chernoff_lower_bound(dist, p_out, options.tol);
    beta = bound.valid ? bound.value / norm : 0.0;
  }
  auto d = transmit_power(isnr_0, beta, cap);
  if (hardens) {
    if (params.doppler_hz <= 0.0) {
      d.lag_cap_s = std::numeric_limits<double>::infinity();
    } else {
      try {
        d.lag_cap_s = max_lag(scheme, isnr_0, cap, n_rx) / params.doppler_hz;
      } catch (const InfeasibleError&) {
        d.lag_cap_s = 0.0;
      }
    }
  }
  return d;
}

PowerDecision run_power_adaptation(const ChannelSnapshot& h0, BeamformerKind scheme, const GroupingPlan* plan,
                                   const AgingParams& params, const ReliabilityBudget& budget,
                                   const ThresholdModel& model, double cap, const PowerAdaptOptions& options) {
  const double isnr_0 = isnr_threshold(model, budget.p_dec);
  const auto weights = build_weights(scheme, h0, plan);
  const auto dist = gain_moments(h0, weights, params);
  return power_from_distribution(dist, scheme, h0.m_tx(), h0.n_rx(), params, budget.p_out, isnr_0, cap, options);
}

}  // namespace agedbf

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

#ifndef AGEDBF_EXPERIMENTS_HPP
#define AGEDBF_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "agedbf/csv_table.hpp"
#include "agedbf/experiment_config.hpp"

namespace agedbf {

// Monte Carlo drivers. Every result is a pure function of (config, seed):
// samples are drawn in fixed-size chunks with their own substreams and
// partial results are reduced in chunk order, so the worker count never
// changes an output bit. One channel draw H0 is shared by all schemes
// (and velocities) at the same M, which pairs the comparisons.

struct RunOptions {
  int workers = 1;
};

inline constexpr std::int64_t kTrialChunk = 4096;
inline constexpr std::int64_t kDrawChunk = 32;

// ---- outage -----------------------------------------------------------------

struct OutageEstimate {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double p_hat = 0.0;
  double ci99_upper = 1.0;  // one-sided Clopper-Pearson
  double target = 0.0;
};

/// One-sided upper confidence limit of a binomial proportion.
double clopper_pearson_upper(std::int64_t failures, std::int64_t trials, double confidence = 0.99);
OutageEstimate make_outage_estimate(std::int64_t failures, std::int64_t trials, double target);

struct OutageRow {
  SchemeSpec scheme;
  BoundKind bound = BoundKind::kChernoff;
  double velocity_mps = 0.0;
  int m_tx = 0;
  int n_rx = 0;
  OutageEstimate estimate;
  double valid_fraction = 0.0;
  double bound_mean = 0.0;
};

struct OutageResult {
  std::vector<OutageRow> rows;
  std::vector<std::string> warnings;
};

/// Per trial: draw H0, bound every (scheme, bound, p_out), evolve once,
/// and count realized gains below the bound.
OutageResult estimate_outage(const ExperimentConfig& config, const RunOptions& options = {});
CsvTable outage_table(const std::vector<OutageRow>& rows);

// ---- bound distributions ----------------------------------------------------

struct HistogramRow {
  SchemeSpec scheme;
  std::string series;
  double velocity_mps = 0.0;
  int m_tx = 0;
  int n_rx = 0;
  double p_out = 0.0;
  int bin = 0;
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  std::int64_t count = 0;
  double density = 0.0;
};

struct SeriesSummary {
  SchemeSpec scheme;
  std::string series;
  double velocity_mps = 0.0;
  int m_tx = 0;
  int n_rx = 0;
  double p_out = 0.0;
  std::int64_t draws = 0;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double max = 0.0;
  double valid_fraction = 0.0;
  double normalized_mean = 0.0;
};

struct PdfResult {
  std::vector<HistogramRow> histogram;
  std::vector<SeriesSummary> summary;
};

/// Histograms over H0 draws of the Chernoff, Chebyshev (exact and
/// simplified variance) and polynomial bounds.
PdfResult gain_pdf(const ExperimentConfig& config, const RunOptions& options = {});
CsvTable pdf_histogram_table(const std::vector<HistogramRow>& rows);
CsvTable pdf_summary_table(const std::vector<SeriesSummary>& rows);

// ---- hardening --------------------------------------------------------------

struct HardeningRow {
  SchemeSpec scheme;
  double velocity_mps = 0.0;
  int m_tx = 0;
  int n_rx = 0;
  double p_out = 0.0;
  std::int64_t draws = 0;
  double mean_norm_mn = 0.0;  // Chernoff bound / (M N)
  double std_norm_mn = 0.0;
  double p05_norm_mn = 0.0;
  double p50_norm_mn = 0.0;
  double p95_norm_mn = 0.0;
  double mean_norm_m = 0.0;  // Chernoff bound / M
  double hardened_limit = 0.0;  // NaN for schemes without a limit
  double rel_gap = 0.0;         // (limit - mean_norm_mn) / limit
  double cv = 0.0;              // std / mean
};

std::vector<HardeningRow> hardening_sweep(const ExperimentConfig& config, const RunOptions& options = {});
CsvTable hardening_table(const std::vector<HardeningRow>& rows);

// ---- power sweeps -------------------------------------------------------------

struct PowerRow {
  SchemeSpec scheme;
  double velocity_mps = 0.0;
  int m_tx = 0;
  int n_rx = 0;
  double p_per = 0.0;
  double p_dec = 0.0;
  double p_out = 0.0;
  double isnr0_db = 0.0;
  std::int64_t draws = 0;
  std::int64_t finite_draws = 0;    // draws with a positive bound
  std::int64_t feasible_draws = 0;  // ... and gamma within the cap
  double avg_gamma_db = 0.0;        // dB of the mean linear gamma
  double mean_gamma_db = 0.0;       // mean of per-draw dB values
  double mean_beta_lb = 0.0;        // mean normalized bound
  double lag_cap_s = 0.0;
};

/// Average transmit power over H0 draws for every (velocity, M, scheme, p_dec).
std::vector<PowerRow> power_vs_pdec(const ExperimentConfig& config, const RunOptions& options = {});
std::vector<PowerRow> power_vs_m(const ExperimentConfig& config, const RunOptions& options = {});
CsvTable power_table(const std::vector<PowerRow>& rows);

// ---- energy recycling -----------------------------------------------------------

/// 1 + (N - 1) / (M j0^2 + sigma^2): expected recycling gain over the
/// diagonal-only combine, averaged over Rayleigh H0.
double recycling_rho(int m_tx, int n_rx, const AgingParams& params);

struct RecyclingRow {
  double velocity_mps = 0.0;
  int m_tx = 0;
  int n_rx = 0;
  double p_out = 0.0;
  std::int64_t trials = 0;
  std::int64_t draws = 0;
  double rho_closed_form = 0.0;
  double asnr_ratio_mc = 0.0;
  double bound_mean_ratio = 0.0;
  double excess = 0.0;  // bound_mean_ratio - rho_closed_form
};

std::vector<RecyclingRow> recycling_ratio(const ExperimentConfig& config, const RunOptions& options = {});
CsvTable recycling_table(const std::vector<RecyclingRow>& rows);

// ---- single-draw comparison ------------------------------------------------------

struct BoundsCompareRow {
  SchemeSpec scheme;
  std::string bound;
  double velocity_mps = 0.0;
  int m_tx = 0;
  int n_rx = 0;
  double p_out = 0.0;
  double value = 0.0;
  double normalized_value = 0.0;
  bool valid = false;
  int iterations = 0;
  double mean = 0.0;
  double variance = 0.0;
  double simplified_variance = 0.0;
};

/// Every bound for one H0 draw per (velocity, M, scheme, p_out).
std::vector<BoundsCompareRow> bounds_compare(const ExperimentConfig& config, const RunOptions& options = {});
CsvTable bounds_compare_table(const std::vector<BoundsCompareRow>& rows);

// ---- dispatcher -------------------------------------------------------------------

struct ExperimentOutput {
  /// (file suffix, table); the main table has an empty suffix.
  std::vector<std::pair<std::string, CsvTable>> tables;
  std::vector<std::string> warnings;
  /// Grid points at which no draw produced a usable transmit power.
  int infeasible_points = 0;
};

ExperimentOutput run_experiment(Operation op, const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace agedbf

#endif  // AGEDBF_EXPERIMENTS_HPP

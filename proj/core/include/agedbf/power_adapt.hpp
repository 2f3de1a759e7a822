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

#ifndef AGEDBF_POWER_ADAPT_HPP
#define AGEDBF_POWER_ADAPT_HPP

#include <istream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "agedbf/beamforming.hpp"
#include "agedbf/bounds.hpp"
#include "agedbf/fading_channel.hpp"
#include "agedbf/gain_stats.hpp"

namespace agedbf {

// ---- reliability budget ----------------------------------------------------

enum class BudgetMode {
  kPessimistic,  // 2 max(p_out, p_dec) <= p_per, taken with equality
  kSplit,        // p_out + p_dec = p_per
};

struct ReliabilityBudget {
  double p_per = 0.0;
  double p_dec = 0.0;
  double p_out = 0.0;
  BudgetMode mode = BudgetMode::kSplit;
};

/// kSplit: p_out = p_per - p_dec, requires 0 < p_dec < p_per < 1.
/// kPessimistic: p_out = p_dec = p_per / 2; the p_dec argument is ignored.
ReliabilityBudget split_budget(double p_per, double p_dec, BudgetMode mode);

// ---- decoding threshold ----------------------------------------------------

/// Maps a decoding-error target to the iSNR it requires.
struct ThresholdModel {
  enum class Kind { kNormalApproximation, kLookupTable };

  Kind kind = Kind::kNormalApproximation;
  int blocklength = 128;  // channel uses per codeword
  double rate = 0.5;      // information bits per channel use
  /// (p_dec, isnr0_db) sorted by increasing p_dec, isnr strictly decreasing.
  std::vector<std::pair<double, double>> table;

  static ThresholdModel normal_approximation(int blocklength = 128, double rate = 0.5);
  /// Validates ordering and monotonicity; throws std::invalid_argument.
  static ThresholdModel lookup_table(std::vector<std::pair<double, double>> rows);
  /// Two-column CSV with the exact header "p_dec,isnr0_db".
  static ThresholdModel from_csv(std::istream& in);
  static ThresholdModel from_csv_file(const std::string& path);
};

/// Finite-blocklength error probability of an AWGN code at linear SNR x:
/// Q((C(x) - R + log2(n) / (2n)) sqrt(n / V(x))).
double normal_approximation_error(double isnr, int blocklength, double rate);

/// Linear iSNR threshold for p_dec. The normal approximation returns the
/// smallest iSNR meeting p_dec (bisection); tables interpolate
/// isnr0_db linearly in log10(p_dec) and throw std::out_of_range outside.
double isnr_threshold(const ThresholdModel& model, double p_dec);

// ---- transmit power ---------------------------------------------------------

struct PowerDecision {
  double gamma = std::numeric_limits<double>::infinity();
  double gamma_db = std::numeric_limits<double>::infinity();
  double isnr_0 = 0.0;
  double beta_lb = 0.0;
  bool feasible = false;
  double lag_cap_s = std::numeric_limits<double>::quiet_NaN();
};

/// gamma = isnr_0 / beta_lb. A non-positive bound yields an infeasible
/// decision with infinite gamma instead of an error.
PowerDecision transmit_power(double isnr_0, double beta_lb, double cap);

/// Largest normalized lag tau * f_d at which the hardened gain still meets
/// isnr_0 under the power cap: J0^{-1}(sqrt(c isnr_0 / cap)) / (2 pi), with
/// c = N for the superimposed MF and 1 for the time-orthogonal MF.
/// Throws InfeasibleError when c isnr_0 / cap > 1.
double max_lag(BeamformerKind scheme, double isnr_0, double cap, int n_rx);

/// Gains are compared with isnr_0 after division by a normalization constant.
enum class GainNormalization {
  kNone,
  kPerTx,       // divide by the number of active Tx antennas
  kPerTxAndRx,  // divide by (active Tx antennas) x N
};

/// The constant for one scheme. The MRC baseline drives a single Tx antenna.
double normalization_factor(BeamformerKind scheme, int m_tx, int n_rx, GainNormalization norm);

struct PowerAdaptOptions {
  double tol = kDefaultChernoffTol;
  /// Use the hardened limit instead of the Chernoff bound once M reaches
  /// this value (superimposed and time-orthogonal MF only). 0 disables.
  int hardened_shortcut_min_m = 0;
  GainNormalization normalization = GainNormalization::kPerTxAndRx;
};

/// Steps 3-4 for an already characterized gain law.
PowerDecision power_from_distribution(const GainDistribution& dist, BeamformerKind scheme, int m_tx, int n_rx,
                                      const AgingParams& params, double p_out, double isnr_0, double cap,
                                      const PowerAdaptOptions& options = {});

/// Threshold, weights, pessimistic bound, power.
PowerDecision run_power_adaptation(const ChannelSnapshot& h0, BeamformerKind scheme, const GroupingPlan* plan,
                                   const AgingParams& params, const ReliabilityBudget& budget,
                                   const ThresholdModel& model, double cap,
                                   const PowerAdaptOptions& options = {});

}  // namespace agedbf

#endif  // AGEDBF_POWER_ADAPT_HPP

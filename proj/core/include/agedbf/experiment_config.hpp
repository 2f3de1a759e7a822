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

#ifndef AGEDBF_EXPERIMENT_CONFIG_HPP
#define AGEDBF_EXPERIMENT_CONFIG_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "agedbf/beamforming.hpp"
#include "agedbf/bounds.hpp"
#include "agedbf/power_adapt.hpp"

namespace agedbf {

enum class Operation { kOutage, kPdf, kHardening, kPowerPdec, kPowerM, kRecycling, kBoundsCompare };

/// CLI subcommand name of an operation ("outage", "power-m", ...).
std::string_view to_string(Operation op);
Operation parse_operation(std::string_view name);

/// One simulated scheme. k_groups is 1 except for G-STBC kinds.
struct SchemeSpec {
  BeamformerKind kind = BeamformerKind::kSuperimposedMf;
  int k_groups = 1;
};

/// Experiment parameters. Units are part of the JSON field names.
/// List-valued fields accept a scalar or an array.
///
/// JSON fields (required unless a default is listed):
///   schemes            [string]   beamformer kinds (not used by recycling)
///   m_tx               int|[int]
///   n_rx               int
///   k_groups           int|[int]  default 1, applies to G-STBC kinds
///   velocity_mps       num|[num]
///   carrier_hz         num
///   lag_s              num
///   p_per              num        default 1e-5
///   p_dec              num|[num]  power sweeps
///   p_out              num|[num]  outage, pdf, hardening, recycling, bounds-compare
///   budget_mode        "split" | "pessimistic", default "split"
///   bounds             [string]   default ["chernoff"] (outage)
///   trials             int        outage, recycling
///   channel_draws      int        pdf, hardening, power sweeps, recycling
///   seed               int        default 1
///   output_path        string     default "<command>.csv"
///   bins               int        default 50 (pdf)
///   threshold          object     {"kind": "normal_approximation", "blocklength": 128, "rate": 0.5}
///                                 or {"kind": "lookup_table", "path": "table.csv"}
///   power_cap          num        default unlimited
///   normalization      "per_tx_rx" | "per_tx" | "none", default "per_tx_rx"
///   tol                num        default 1e-4
///   hardened_shortcut_min_m int   default 0 (off)
///   mrc_antenna        int        default 0
struct ExperimentConfig {
  std::vector<BeamformerKind> schemes;
  std::vector<int> m_tx;
  int n_rx = 0;
  std::vector<int> k_groups{1};
  std::vector<double> velocity_mps;
  double carrier_hz = 0.0;
  double lag_s = 0.0;
  double p_per = 1e-5;
  std::vector<double> p_dec;
  std::vector<double> p_out;
  BudgetMode budget_mode = BudgetMode::kSplit;
  std::vector<BoundKind> bounds{BoundKind::kChernoff};
  std::int64_t trials = 0;
  std::int64_t channel_draws = 0;
  std::uint64_t seed = 1;
  std::string output_path;
  int bins = 50;
  ThresholdModel threshold = ThresholdModel::normal_approximation();
  double power_cap = std::numeric_limits<double>::infinity();
  GainNormalization normalization = GainNormalization::kPerTxAndRx;
  double tol = kDefaultChernoffTol;
  int hardened_shortcut_min_m = 0;
  int mrc_antenna = 0;

  /// schemes x k_groups, with the K list applied to G-STBC kinds only.
  std::vector<SchemeSpec> scheme_specs() const;
};

/// Parses JSON text. Unknown or malformed fields raise ConfigError naming
/// the field; fields required by every operation are checked here.
ExperimentConfig parse_experiment_config(std::string_view json_text, Operation op);
ExperimentConfig load_experiment_config(const std::string& path, Operation op);

/// Re-checks operation-specific requirements and ranges, e.g. after CLI overrides.
void validate_config(const ExperimentConfig& config, Operation op);

}  // namespace agedbf

#endif  // AGEDBF_EXPERIMENT_CONFIG_HPP

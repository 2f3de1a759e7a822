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

#ifndef AGEDBF_GAIN_STATS_HPP
#define AGEDBF_GAIN_STATS_HPP

#include "agedbf/beamforming.hpp"
#include "agedbf/fading_channel.hpp"

namespace agedbf {

/// Law of the beamforming gain under aged CSIT: a sum of `degrees`
/// complex Gaussian terms of variance sigma_omega_sq around a known part.
///
/// `variance` is the exact second central moment of that law.
/// `simplified_variance` is the 4*noncentrality + 2*D*sigma^2 shorthand,
/// kept for side-by-side reporting.
struct GainDistribution {
  double mean = 0.0;
  double variance = 0.0;
  double simplified_variance = 0.0;
  int degrees = 1;
  double sigma_omega_sq = 0.0;
  double noncentrality = 0.0;  // mean - degrees * sigma_omega_sq

  bool deterministic() const noexcept { return sigma_omega_sq == 0.0; }
};

/// Distribution with independent, isotropic terms (variance D s^4 + 2 s^2 nc).
GainDistribution make_gain_distribution(double noncentrality, int degrees, double sigma_omega_sq);

/// Superimposed (or any single-vector) beamformer: mean j0^2 ||H0 w||^2 + N s^2.
GainDistribution superimposed_moments(const ChannelSnapshot& h0, const ComplexVector& w,
                                      const AgingParams& params);

/// Time-orthogonal MF: mean j0^2 ||H0||^2 + N s^2, or with recycling
/// j0^2 ||H0 W||^2 + N^2 s^2 (degrees N^2).
GainDistribution time_orthogonal_moments(const ChannelSnapshot& h0, const TxWeights& weights,
                                         const AgingParams& params);

/// G-STBC: degrees N*K. The superimposed mean is j0^2 sum_k ||H0_k w_k||^2 + NK s^2;
/// the time-orthogonal mean j0^2 ||H0||^2 + NK s^2 does not depend on the grouping.
GainDistribution gstbc_moments(const ChannelSnapshot& h0, const TxWeights& weights, const GroupingPlan& plan,
                               const AgingParams& params, BeamformerKind kind);

/// Single Tx antenna with Rx MRC: central, mean N, degrees N, unit term variance.
GainDistribution mrc_distribution(int n_rx);

/// Dispatch on weights.kind.
GainDistribution gain_moments(const ChannelSnapshot& h0, const TxWeights& weights, const AgingParams& params);

/// Exact variance of the realized gain for arbitrary weights, from the
/// per-row Gram matrices of the combiners. Handles correlated terms.
double exact_gain_variance(const ChannelSnapshot& h0, const TxWeights& weights, const AgingParams& params);

/// log f(t, beta) = t beta - nc t / (1 + s^2 t) - D log(1 + s^2 t).
double chernoff_log_objective(double t, double beta_lb, const GainDistribution& dist);

/// exp of chernoff_log_objective. May underflow to 0 for large t.
double chernoff_objective(double t, double beta_lb, const GainDistribution& dist);

/// Minimizer of the Chernoff objective over t > 0.
/// Throws std::invalid_argument unless 0 < beta_lb < mean, and
/// DeterministicGainError when sigma_omega_sq == 0.
double optimal_t(double beta_lb, const GainDistribution& dist);

}  // namespace agedbf

#endif  // AGEDBF_GAIN_STATS_HPP

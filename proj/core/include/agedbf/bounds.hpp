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

#ifndef AGEDBF_BOUNDS_HPP
#define AGEDBF_BOUNDS_HPP

#include <string_view>

#include "agedbf/beamforming.hpp"
#include "agedbf/fading_channel.hpp"
#include "agedbf/gain_stats.hpp"

namespace agedbf {

enum class BoundKind { kChernoff, kChebyshev, kPolynomial, kHardenedLimit };

std::string_view to_string(BoundKind kind);
BoundKind parse_bound_kind(std::string_view name);

/// Pessimistic lower bound on the beamforming gain at outage level p_out.
/// `valid` is false whenever `value` is not a finite positive number.
struct BoundResult {
  BoundKind kind = BoundKind::kChernoff;
  double value = 0.0;
  double p_out = 0.0;
  bool valid = false;
  int iterations = 0;
};

inline constexpr double kDefaultChernoffTol = 1e-4;

/// Bisection on beta in (eps, mean - eps), eps = 1e-12 mean, until
/// |f(t*(beta), beta) - p_out| <= tol * p_out. The objective is increasing
/// in beta, so the bracket always converges.
/// A deterministic distribution returns its mean with zero iterations.
BoundResult chernoff_lower_bound(const GainDistribution& dist, double p_out, double tol = kDefaultChernoffTol);

enum class VarianceForm { kExact, kSimplified };

/// mean - sqrt(variance / p_out). Negative values are reported, flagged invalid.
BoundResult chebyshev_lower_bound(const GainDistribution& dist, double p_out,
                                  VarianceForm form = VarianceForm::kExact);

/// (p_out D!)^(1/D) s^2 exp(mean / (D s^2) - 1), evaluated in the log domain.
BoundResult polynomial_lower_bound(const GainDistribution& dist, double p_out);

/// Large-M limit of the gain normalized by M*N: j0^2 / N for the
/// superimposed MF and j0^2 for the time-orthogonal MF.
double hardened_limit(BeamformerKind scheme, int n_rx, const AgingParams& params);

}  // namespace agedbf

#endif  // AGEDBF_BOUNDS_HPP

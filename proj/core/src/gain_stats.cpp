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

#include "agedbf/gain_stats.hpp"

#include <cmath>
#include <stdexcept>

#include "agedbf/error.hpp"

namespace agedbf {

namespace {

// Known (CSIT-predictable) gain: the realized gain evaluated on h0 itself.
// Reusing realized_gain keeps the sigma = 0 case bit-identical to simulation.
double known_gain(const ChannelSnapshot& h0, const TxWeights& weights) {
  return realized_gain(h0, weights).value;
}

GainDistribution with_exact_variance(GainDistribution d, const ChannelSnapshot& h0, const TxWeights& weights,
                                     const AgingParams& params) {
  d.variance = exact_gain_variance(h0, weights, params);
  return d;
}

}  // namespace

GainDistribution make_gain_distribution(double noncentrality, int degrees, double sigma_omega_sq) {
  if (degrees < 1) {
    throw std::invalid_argument("make_gain_distribution: degrees must be positive");
  }
  if (!(noncentrality >= 0.0) || !(sigma_omega_sq >= 0.0 && sigma_omega_sq <= 1.0)) {
    throw std::invalid_argument("make_gain_distribution: invalid noncentrality or sigma_omega_sq");
  }
  GainDistribution d;
  d.degrees = degrees;
  d.sigma_omega_sq = sigma_omega_sq;
  d.noncentrality = noncentrality;
  d.mean = noncentrality + degrees * sigma_omega_sq;
  d.variance = degrees * sigma_omega_sq * sigma_omega_sq + 2.0 * sigma_omega_sq * noncentrality;
  d.simplified_variance = 4.0 * noncentrality + 2.0 * degrees * sigma_omega_sq;
  if (d.deterministic()) {
    d.simplified_variance = 0.0;
  }
  return d;
}

GainDistribution superimposed_moments(const ChannelSnapshot& h0, const ComplexVector& w,
                                      const AgingParams& params) {
  TxWeights tw;
  tw.kind = BeamformerKind::kSuperimposedMf;
  tw.vectors.push_back(w);
  tw.n_rx = h0.n_rx();
  tw.m_tx = h0.m_tx();
  const double j0sq = params.j0 * params.j0;
  return make_gain_distribution(j0sq * known_gain(h0, tw), h0.n_rx(), params.sigma_omega_sq);
}

GainDistribution time_orthogonal_moments(const ChannelSnapshot& h0, const TxWeights& weights,
                                         const AgingParams& params) {
  const bool recycling = weights.kind == BeamformerKind::kTimeOrthogonalMfRecycling;
  if (!recycling && weights.kind != BeamformerKind::kTimeOrthogonalMf) {
    throw std::invalid_argument("time_orthogonal_moments: weights are not time-orthogonal");
  }
  const int n = h0.n_rx();
  const double j0sq = params.j0 * params.j0;
  auto d = make_gain_distribution(j0sq * known_gain(h0, weights), recycling ? n * n : n, params.sigma_omega_sq);
  // The N^2 recycled terms are correlated; only the general form is exact.
  return recycling ? with_exact_variance(d, h0, weights, params) : d;
}

GainDistribution gstbc_moments(const ChannelSnapshot& h0, const TxWeights& weights, const GroupingPlan& plan,
                               const AgingParams& params, BeamformerKind kind) {
  if (!is_gstbc(kind) || weights.kind != kind) {
    throw std::invalid_argument("gstbc_moments: weights and kind must be the same G-STBC scheme");
  }
  if (!weights.grouping || weights.grouping->groups != plan.groups) {
    throw std::invalid_argument("gstbc_moments: weights were built for a different grouping");
  }
  const double j0sq = params.j0 * params.j0;
  return make_gain_distribution(j0sq * known_gain(h0, weights), h0.n_rx() * plan.k_groups(),
                                params.sigma_omega_sq);
}

GainDistribution mrc_distribution(int n_rx) {
  if (n_rx < 1) {
    throw std::invalid_argument("mrc_distribution: n_rx must be positive");
  }
  return make_gain_distribution(0.0, n_rx, 1.0);
}

GainDistribution gain_moments(const ChannelSnapshot& h0, const TxWeights& weights, const AgingParams& params) {
  switch (weights.kind) {
    case BeamformerKind::kSvdSingleStream:
    case BeamformerKind::kSuperimposedMf:
      return superimposed_moments(h0, weights.vectors.at(0), params);
    case BeamformerKind::kTimeOrthogonalMf:
    case BeamformerKind::kTimeOrthogonalMfRecycling:
      return time_orthogonal_moments(h0, weights, params);
    case BeamformerKind::kMrcBaseline:
      return mrc_distribution(h0.n_rx());
    case BeamformerKind::kGStbcSuperimposed:
    case BeamformerKind::kGStbcTimeOrthogonal:
      return gstbc_moments(h0, weights, weights.grouping.value(), params, weights.kind);
  }
  throw std::invalid_argument("gain_moments: unknown kind");
}

double exact_gain_variance(const ChannelSnapshot& h0, const TxWeights& weights, const AgingParams& params) {
  // Row n contributes y_n = C_n^T h_n ~ CN(m_n, S_n), m_n = j0 C_n^T h0_n,
  // S_n = s^2 C_n^T conj(C_n); Var ||y_n||^2 = tr(S_n^2) + 2 m_n^H S_n m_n.
  const double s2 = params.sigma_omega_sq;
  double var = 0.0;
  for (int n = 0; n < h0.n_rx(); ++n) {
    const ComplexMatrix c = row_combiner(weights, n);
    const ComplexMatrix s = s2 * (c.transpose() * c.conjugate());
    const ComplexVector m = params.j0 * (c.transpose() * h0.row(n).transpose());
    var += (s * s).trace().real() + 2.0 * m.dot(s * m).real();
  }
  return var;
}

double chernoff_log_objective(double t, double beta_lb, const GainDistribution& dist) {
  const double st = dist.sigma_omega_sq * t;
  return t * beta_lb - dist.noncentrality * t / (1.0 + st) - dist.degrees * std::log1p(st);
}

double chernoff_objective(double t, double beta_lb, const GainDistribution& dist) {
  return std::exp(chernoff_log_objective(t, beta_lb, dist));
}

double optimal_t(double beta_lb, const GainDistribution& dist) {
  if (dist.deterministic()) {
    throw DeterministicGainError("optimal_t: gain is deterministic when sigma_omega_sq == 0");
  }
  if (!(beta_lb > 0.0 && beta_lb < dist.mean)) {
    throw std::invalid_argument("optimal_t: beta_lb must lie in (0, mean)");
  }
  // With x = 1 + s^2 t the stationarity condition is beta x^2 - D s^2 x - nc = 0.
  // u = x - 1 is written in whichever form avoids cancellation.
  const double s2 = dist.sigma_omega_sq;
  const double ds2 = dist.degrees * s2;
  const double root = std::sqrt(ds2 * ds2 + 4.0 * beta_lb * dist.noncentrality);
  const double lead = 2.0 * beta_lb - ds2;
  double u = 0.0;
  if (lead > 0.0) {
    u = 2.0 * (dist.mean - beta_lb) / (root + lead);
  } else {
    u = (root - lead) / (2.0 * beta_lb);
  }
  return u / s2;
}

}  // namespace agedbf

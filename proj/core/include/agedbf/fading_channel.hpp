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

#ifndef AGEDBF_FADING_CHANNEL_HPP
#define AGEDBF_FADING_CHANNEL_HPP

#include <Eigen/Dense>

#include "agedbf/rng.hpp"

namespace agedbf {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kBesselJ0FirstZero = 2.404825557695773;

/// Zero-order Bessel function of the first kind.
///
/// Power series for |x| <= 12, Hankel asymptotic expansion beyond.
/// Absolute error below 1e-10 on |x| <= 50.
double bessel_j0(double x);

/// Inverse of J0 on its first monotone branch: returns x in
/// [0, kBesselJ0FirstZero] with J0(x) == value. Requires value in [0, 1].
double bessel_j0_inverse(double value);

/// N x M matrix of complex channel coefficients (rows: Rx antennas,
/// columns: Tx antennas). Immutable once built; every entry is finite.
class ChannelSnapshot {
 public:
  explicit ChannelSnapshot(ComplexMatrix entries);

  int n_rx() const noexcept { return static_cast<int>(entries_.rows()); }
  int m_tx() const noexcept { return static_cast<int>(entries_.cols()); }
  const ComplexMatrix& entries() const noexcept { return entries_; }

  /// h_n^T, the channel seen by Rx antenna n.
  auto row(int n) const { return entries_.row(n); }

 private:
  ComplexMatrix entries_;
};

/// First-order Markov aging of CSIT over a lag.
struct AgingParams {
  double doppler_hz = 0.0;
  double lag_s = 0.0;
  double j0 = 1.0;              // J0(2 pi f_d tau)
  double sigma_omega_sq = 0.0;  // 1 - j0^2

  /// Parameters with a prescribed correlation and no kinematics attached.
  static AgingParams from_correlation(double j0);
};

AgingParams aging_params(double velocity_mps, double carrier_hz, double lag_s);

/// i.i.d. CN(0, 1) Rayleigh channel.
ChannelSnapshot sample_initial_channel(int m_tx, int n_rx, SeededRng& rng);

/// H_tau = j0 H_0 + Omega with Omega i.i.d. CN(0, sigma_omega^2).
/// sigma_omega^2 == 0 returns an exact copy of h0 and consumes no draws.
ChannelSnapshot evolve(const ChannelSnapshot& h0, const AgingParams& params, SeededRng& rng);

}  // namespace agedbf

#endif  // AGEDBF_FADING_CHANNEL_HPP

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

#include "agedbf/fading_channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace agedbf {

namespace {

constexpr double kSeriesLimit = 12.0;

double j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= -q / (static_cast<double>(k) * static_cast<double>(k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) {
      break;
    }
  }
  return sum;
}

// J0(x) ~ sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4)) with
// a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k). Summed up to the smallest term.
double j0_hankel(double x) {
  double p = 0.0;
  double q = 0.0;
  double a = 1.0;        // a_k / x^k
  double last = 1e300;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      const double odd = 2.0 * k - 1.0;
      a *= -(odd * odd) / (8.0 * k * x);
    }
    if (std::abs(a) > last) {
      break;
    }
    last = std::abs(a);
    // (-1)^floor(k/2) sign pattern of P and Q.
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * a;
    } else {
      q += sign * a;
    }
    if (last < 1e-17) {
      break;
    }
  }
  const double chi = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("bessel_j0: argument must be finite");
  }
  const double ax = std::abs(x);
  return ax <= kSeriesLimit ? j0_series(ax) : j0_hankel(ax);
}

double bessel_j0_inverse(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::invalid_argument("bessel_j0_inverse: value must lie in [0, 1]");
  }
  if (value == 1.0) {
    return 0.0;
  }
  // J0 is strictly decreasing on [0, first zero].
  double lo = 0.0;
  double hi = kBesselJ0FirstZero;
  for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (bessel_j0(mid) > value) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ChannelSnapshot::ChannelSnapshot(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw std::invalid_argument("ChannelSnapshot: dimensions must be positive");
  }
  if (!entries_.allFinite()) {
    throw std::invalid_argument("ChannelSnapshot: entries must be finite");
  }
}

AgingParams AgingParams::from_correlation(double j0) {
  if (!(j0 >= -1.0 && j0 <= 1.0)) {
    throw std::invalid_argument("AgingParams: correlation must lie in [-1, 1]");
  }
  AgingParams p;
  p.j0 = j0;
  p.sigma_omega_sq = 1.0 - j0 * j0;
  return p;
}

AgingParams aging_params(double velocity_mps, double carrier_hz, double lag_s) {
  if (!std::isfinite(velocity_mps) || !std::isfinite(carrier_hz) || !std::isfinite(lag_s)) {
    throw std::invalid_argument("aging_params: arguments must be finite");
  }
  if (velocity_mps < 0.0 || lag_s < 0.0) {
    throw std::invalid_argument("aging_params: velocity and lag must be non-negative");
  }
  if (carrier_hz <= 0.0) {
    throw std::invalid_argument("aging_params: carrier frequency must be positive");
  }
  AgingParams p;
  p.doppler_hz = velocity_mps * carrier_hz / kSpeedOfLight;
  p.lag_s = lag_s;
  p.j0 = bessel_j0(2.0 * std::numbers::pi * p.doppler_hz * lag_s);
  p.sigma_omega_sq = 1.0 - p.j0 * p.j0;
  return p;
}

ChannelSnapshot sample_initial_channel(int m_tx, int n_rx, SeededRng& rng) {
  if (m_tx < 1 || n_rx < 1) {
    throw std::invalid_argument("sample_initial_channel: dimensions must be positive");
  }
  ComplexMatrix h(n_rx, m_tx);
  // Column-major fill; the draw order is part of the determinism contract.
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    h.data()[i] = rng.complex_normal();
  }
  return ChannelSnapshot(std::move(h));
}

ChannelSnapshot evolve(const ChannelSnapshot& h0, const AgingParams& params, SeededRng& rng) {
  if (params.sigma_omega_sq == 0.0) {
    return h0;
  }
  if (!(params.sigma_omega_sq > 0.0 && params.sigma_omega_sq <= 1.0)) {
    throw std::invalid_argument("evolve: sigma_omega_sq must lie in [0, 1]");
  }
  const double scale = std::sqrt(params.sigma_omega_sq);
  ComplexMatrix h = params.j0 * h0.entries();
  for (Eigen::Index i = 0; i < h.size(); ++i) {
    h.data()[i] += scale * rng.complex_normal();
  }
  return ChannelSnapshot(std::move(h));
}

}  // namespace agedbf

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

#include "agedbf/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace agedbf {

namespace {

void check_p_out(double p_out, const char* who) {
  if (!(p_out > 0.0 && p_out < 1.0)) {
    throw std::invalid_argument(std::string(who) + ": p_out must lie in (0, 1)");
  }
}

BoundResult finish(BoundKind kind, double value, double p_out, int iterations) {
  return {kind, value, p_out, std::isfinite(value) && value > 0.0, iterations};
}

constexpr int kMaxBisections = 200;

}  // namespace

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kChernoff: return "chernoff";
    case BoundKind::kChebyshev: return "chebyshev";
    case BoundKind::kPolynomial: return "polynomial";
    case BoundKind::kHardenedLimit: return "hardened_limit";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  for (auto k : {BoundKind::kChernoff, BoundKind::kChebyshev, BoundKind::kPolynomial, BoundKind::kHardenedLimit}) {
    if (to_string(k) == name) {
      return k;
    }
  }
  throw std::invalid_argument("unknown bound kind '" + std::string(name) + "'");
}

BoundResult chernoff_lower_bound(const GainDistribution& dist, double p_out, double tol) {
  check_p_out(p_out, "chernoff_lower_bound");
  if (!(tol > 0.0)) {
    throw std::invalid_argument("chernoff_lower_bound: tol must be positive");
  }
  if (dist.deterministic()) {
    return finish(BoundKind::kChernoff, dist.mean, p_out, 0);
  }
  const double log_p = std::log(p_out);
  const auto excess = [&](double beta) {
    return chernoff_log_objective(optimal_t(beta, dist), beta, dist) - log_p;
  };

  const double eps = 1e-12 * dist.mean;
  double lo = eps;
  double hi = dist.mean - eps;
  // Below the bracket the bound is not representable; report the edge as invalid.
  if (excess(lo) > 0.0) {
    return {BoundKind::kChernoff, lo, p_out, false, 1};
  }
  int it = 0;
  double mid = 0.5 * (lo + hi);
  while (it < kMaxBisections) {
    mid = 0.5 * (lo + hi);
    ++it;
    const double g = excess(mid);
    if (std::abs(std::expm1(g)) <= tol) {
      break;
    }
    if (g < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      break;
    }
  }
  return finish(BoundKind::kChernoff, mid, p_out, it);
}

BoundResult chebyshev_lower_bound(const GainDistribution& dist, double p_out, VarianceForm form) {
  check_p_out(p_out, "chebyshev_lower_bound");
  const double var = form == VarianceForm::kExact ? dist.variance : dist.simplified_variance;
  return finish(BoundKind::kChebyshev, dist.mean - std::sqrt(var / p_out), p_out, 0);
}

BoundResult polynomial_lower_bound(const GainDistribution& dist, double p_out) {
  check_p_out(p_out, "polynomial_lower_bound");
  if (dist.deterministic()) {
    return finish(BoundKind::kPolynomial, dist.mean, p_out, 0);
  }
  const double d = dist.degrees;
  const double s2 = dist.sigma_omega_sq;
  const double log_value = (std::log(p_out) + std::lgamma(d + 1.0)) / d + std::log(s2) + dist.mean / (d * s2) - 1.0;
  return finish(BoundKind::kPolynomial, std::exp(log_value), p_out, 0);
}

double hardened_limit(BeamformerKind scheme, int n_rx, const AgingParams& params) {
  if (n_rx < 1) {
    throw std::invalid_argument("hardened_limit: n_rx must be positive");
  }
  const double j0sq = params.j0 * params.j0;
  switch (scheme) {
    case BeamformerKind::kSuperimposedMf: return j0sq / n_rx;
    case BeamformerKind::kTimeOrthogonalMf: return j0sq;
    default:
      throw std::invalid_argument("hardened_limit: only the superimposed and time-orthogonal MF have a limit");
  }
}

}  // namespace agedbf

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

#include "agedbf/beamforming.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "agedbf/error.hpp"

namespace agedbf {

namespace {

using Complex = std::complex<double>;

// All reductions below run in a fixed sequential order so that a G-STBC
// scheme with K = 1 reproduces the ungrouped gain bit for bit.

Complex row_dot(const ComplexMatrix& h, int n, const ComplexVector& w, const std::vector<int>& support) {
  Complex acc{0.0, 0.0};
  for (int m : support) {
    acc += h(n, m) * w(m);
  }
  return acc;
}

std::vector<int> all_indices(int m_tx) {
  std::vector<int> idx(static_cast<std::size_t>(m_tx));
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

ComplexVector normalized_conjugate(const ComplexVector& s, int m_tx, const std::vector<int>& support,
                                   const char* what) {
  double energy = 0.0;
  for (int m : support) {
    energy += std::norm(s(m));
  }
  if (!(energy > std::numeric_limits<double>::min())) {
    throw DegenerateChannelError(std::string(what) + ": zero channel direction");
  }
  const double inv = 1.0 / std::sqrt(energy);
  ComplexVector w = ComplexVector::Zero(m_tx);
  for (int m : support) {
    w(m) = std::conj(s(m)) * inv;
  }
  return w;
}

// conj(sum_n h_n) / ||sum_n h_n|| restricted to `support`.
ComplexVector superimposed_direction(const ComplexMatrix& h, const std::vector<int>& support) {
  ComplexVector s = ComplexVector::Zero(h.cols());
  for (int m : support) {
    Complex acc{0.0, 0.0};
    for (Eigen::Index n = 0; n < h.rows(); ++n) {
      acc += h(n, m);
    }
    s(m) = acc;
  }
  return normalized_conjugate(s, static_cast<int>(h.cols()), support, "superimposed MF");
}

// conj(h_n) / ||h_n|| restricted to `support`.
ComplexVector row_direction(const ComplexMatrix& h, int n, const std::vector<int>& support) {
  ComplexVector s = h.row(n).transpose();
  return normalized_conjugate(s, static_cast<int>(h.cols()), support, "time-orthogonal MF");
}

void check_plan(const GroupingPlan& plan, int m_tx) {
  if (plan.m_tx != m_tx) {
    throw std::invalid_argument("grouping plan does not match the channel's Tx antenna count");
  }
  std::vector<int> seen(static_cast<std::size_t>(m_tx), 0);
  for (const auto& g : plan.groups) {
    if (g.empty()) {
      throw std::invalid_argument("grouping plan contains an empty group");
    }
    for (int m : g) {
      if (m < 0 || m >= m_tx || seen[static_cast<std::size_t>(m)]++ != 0) {
        throw std::invalid_argument("grouping plan is not a partition of the Tx antennas");
      }
    }
  }
  for (int s : seen) {
    if (s != 1) {
      throw std::invalid_argument("grouping plan is not a partition of the Tx antennas");
    }
  }
}

void check_dims(const ChannelSnapshot& h, const TxWeights& weights) {
  if (h.m_tx() != weights.m_tx) {
    throw std::invalid_argument("weights and channel disagree on the Tx antenna count");
  }
  const auto n_vec = static_cast<int>(weights.vectors.size());
  switch (weights.kind) {
    case BeamformerKind::kTimeOrthogonalMf:
    case BeamformerKind::kTimeOrthogonalMfRecycling:
      if (n_vec != h.n_rx()) {
        throw std::invalid_argument("time-orthogonal weights need one vector per Rx antenna");
      }
      break;
    case BeamformerKind::kGStbcSuperimposed:
      if (!weights.grouping || n_vec != weights.grouping->k_groups()) {
        throw std::invalid_argument("G-STBC weights need one vector per group");
      }
      break;
    case BeamformerKind::kGStbcTimeOrthogonal:
      if (!weights.grouping || n_vec != h.n_rx() * weights.grouping->k_groups()) {
        throw std::invalid_argument("time-orthogonal G-STBC weights need N*K vectors");
      }
      break;
    default:
      if (n_vec != 1) {
        throw std::invalid_argument("single-stream weights need exactly one vector");
      }
  }
}

}  // namespace

std::string_view to_string(BeamformerKind kind) {
  switch (kind) {
    case BeamformerKind::kSvdSingleStream: return "svd";
    case BeamformerKind::kSuperimposedMf: return "superimposed";
    case BeamformerKind::kTimeOrthogonalMf: return "time_orthogonal";
    case BeamformerKind::kTimeOrthogonalMfRecycling: return "time_orthogonal_recycling";
    case BeamformerKind::kMrcBaseline: return "mrc";
    case BeamformerKind::kGStbcSuperimposed: return "gstbc_superimposed";
    case BeamformerKind::kGStbcTimeOrthogonal: return "gstbc_time_orthogonal";
  }
  return "unknown";
}

BeamformerKind parse_beamformer_kind(std::string_view name) {
  for (auto kind : {BeamformerKind::kSvdSingleStream, BeamformerKind::kSuperimposedMf,
                    BeamformerKind::kTimeOrthogonalMf, BeamformerKind::kTimeOrthogonalMfRecycling,
                    BeamformerKind::kMrcBaseline, BeamformerKind::kGStbcSuperimposed,
                    BeamformerKind::kGStbcTimeOrthogonal}) {
    if (to_string(kind) == name) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown beamformer kind '" + std::string(name) + "'");
}

std::vector<int> GroupingPlan::sizes() const {
  std::vector<int> s;
  s.reserve(groups.size());
  for (const auto& g : groups) {
    s.push_back(static_cast<int>(g.size()));
  }
  return s;
}

SvdBeam svd_single_stream(const ChannelSnapshot& h0) {
  const ComplexMatrix& h = h0.entries();
  const int n_rx = h0.n_rx();
  if (n_rx > h0.m_tx()) {
    throw DegenerateChannelError("svd_single_stream: rank cannot reach N when N > M");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (!(sv(0) > 0.0) || sv(n_rx - 1) <= 1e-10 * sv(0)) {
    throw DegenerateChannelError("svd_single_stream: channel is rank deficient");
  }
  SvdBeam beam;
  beam.w = svd.matrixV().rowwise().sum();
  beam.w /= beam.w.norm();
  beam.u = svd.matrixU().rowwise().sum();
  const double lambda_sum = sv.sum();
  beam.predicted_isnr_coeff = lambda_sum * lambda_sum / n_rx;
  return beam;
}

TxWeights svd_weights(const ChannelSnapshot& h0) {
  TxWeights tw;
  tw.kind = BeamformerKind::kSvdSingleStream;
  tw.vectors.push_back(svd_single_stream(h0).w);
  tw.n_rx = h0.n_rx();
  tw.m_tx = h0.m_tx();
  return tw;
}

TxWeights superimposed_mf(const ChannelSnapshot& h0) {
  TxWeights tw;
  tw.kind = BeamformerKind::kSuperimposedMf;
  tw.vectors.push_back(superimposed_direction(h0.entries(), all_indices(h0.m_tx())));
  tw.n_rx = h0.n_rx();
  tw.m_tx = h0.m_tx();
  return tw;
}

TxWeights time_orthogonal_mf(const ChannelSnapshot& h0, bool recycling) {
  TxWeights tw;
  tw.kind = recycling ? BeamformerKind::kTimeOrthogonalMfRecycling : BeamformerKind::kTimeOrthogonalMf;
  const auto support = all_indices(h0.m_tx());
  for (int n = 0; n < h0.n_rx(); ++n) {
    tw.vectors.push_back(row_direction(h0.entries(), n, support));
  }
  tw.n_rx = h0.n_rx();
  tw.m_tx = h0.m_tx();
  return tw;
}

TxWeights mrc_baseline_weights(int m_tx, int tx_antenna) {
  if (tx_antenna < 0 || tx_antenna >= m_tx) {
    throw std::out_of_range("mrc_baseline_weights: antenna index out of range");
  }
  TxWeights tw;
  tw.kind = BeamformerKind::kMrcBaseline;
  tw.vectors.push_back(ComplexVector::Unit(m_tx, tx_antenna));
  tw.m_tx = m_tx;
  return tw;
}

GroupingPlan adjacent_grouping(int m_tx, int k_groups, SeededRng& rng) {
  if (k_groups < 1 || m_tx < 1) {
    throw std::invalid_argument("adjacent_grouping: M and K must be positive");
  }
  if (k_groups > m_tx) {
    throw std::invalid_argument("adjacent_grouping: K must not exceed M");
  }
  const int base = m_tx / k_groups;
  const int remainder = m_tx - k_groups * base;

  // Partial Fisher-Yates: the first `remainder` slots pick the enlarged groups.
  std::vector<int> order(static_cast<std::size_t>(k_groups));
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> extra(static_cast<std::size_t>(k_groups), 0);
  for (int i = 0; i < remainder; ++i) {
    const auto j = i + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(k_groups - i)));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    extra[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
  }

  GroupingPlan plan;
  plan.m_tx = m_tx;
  int next = 0;
  for (int k = 0; k < k_groups; ++k) {
    std::vector<int> g(static_cast<std::size_t>(base + extra[static_cast<std::size_t>(k)]));
    std::iota(g.begin(), g.end(), next);
    next += static_cast<int>(g.size());
    plan.groups.push_back(std::move(g));
  }
  return plan;
}

TxWeights gstbc_weights(const ChannelSnapshot& h0, const GroupingPlan& plan, BeamformerKind kind) {
  if (!is_gstbc(kind)) {
    throw std::invalid_argument("gstbc_weights: kind must be a G-STBC scheme");
  }
  check_plan(plan, h0.m_tx());
  TxWeights tw;
  tw.kind = kind;
  tw.grouping = plan;
  tw.n_rx = h0.n_rx();
  tw.m_tx = h0.m_tx();
  const auto& h = h0.entries();
  if (kind == BeamformerKind::kGStbcSuperimposed) {
    for (const auto& g : plan.groups) {
      tw.vectors.push_back(superimposed_direction(h, g));
    }
  } else {
    for (int n = 0; n < h0.n_rx(); ++n) {
      for (const auto& g : plan.groups) {
        tw.vectors.push_back(row_direction(h, n, g));
      }
    }
  }
  return tw;
}

TxWeights build_weights(BeamformerKind kind, const ChannelSnapshot& h0, const GroupingPlan* plan,
                        int mrc_antenna) {
  switch (kind) {
    case BeamformerKind::kSvdSingleStream: return svd_weights(h0);
    case BeamformerKind::kSuperimposedMf: return superimposed_mf(h0);
    case BeamformerKind::kTimeOrthogonalMf: return time_orthogonal_mf(h0, false);
    case BeamformerKind::kTimeOrthogonalMfRecycling: return time_orthogonal_mf(h0, true);
    case BeamformerKind::kMrcBaseline: {
      auto tw = mrc_baseline_weights(h0.m_tx(), mrc_antenna);
      tw.n_rx = h0.n_rx();
      return tw;
    }
    case BeamformerKind::kGStbcSuperimposed:
    case BeamformerKind::kGStbcTimeOrthogonal:
      if (plan == nullptr) {
        throw std::invalid_argument("build_weights: G-STBC schemes need a grouping plan");
      }
      return gstbc_weights(h0, *plan, kind);
  }
  throw std::invalid_argument("build_weights: unknown kind");
}

ComplexMatrix equivalent_channel(const ChannelSnapshot& h, const TxWeights& weights) {
  if (!is_gstbc(weights.kind)) {
    throw std::invalid_argument("equivalent_channel: weights must come from gstbc_weights");
  }
  check_dims(h, weights);
  const auto& plan = *weights.grouping;
  const int k_groups = plan.k_groups();
  const bool per_row = weights.kind == BeamformerKind::kGStbcTimeOrthogonal;
  ComplexMatrix eq(h.n_rx(), k_groups);
  for (int k = 0; k < k_groups; ++k) {
    const auto& support = plan.groups[static_cast<std::size_t>(k)];
    for (int n = 0; n < h.n_rx(); ++n) {
      const auto& w = weights.vectors[static_cast<std::size_t>(per_row ? n * k_groups + k : k)];
      eq(n, k) = row_dot(h.entries(), n, w, support);
    }
  }
  return eq;
}

GainSample realized_gain(const ChannelSnapshot& h_tau, const TxWeights& weights) {
  check_dims(h_tau, weights);
  const auto& h = h_tau.entries();
  const auto support = all_indices(h_tau.m_tx());
  double gain = 0.0;
  switch (weights.kind) {
    case BeamformerKind::kSvdSingleStream:
    case BeamformerKind::kSuperimposedMf:
    case BeamformerKind::kMrcBaseline:
      for (int n = 0; n < h_tau.n_rx(); ++n) {
        gain += std::norm(row_dot(h, n, weights.vectors.front(), support));
      }
      break;
    case BeamformerKind::kTimeOrthogonalMf:
      for (int n = 0; n < h_tau.n_rx(); ++n) {
        gain += std::norm(row_dot(h, n, weights.vectors[static_cast<std::size_t>(n)], support));
      }
      break;
    case BeamformerKind::kTimeOrthogonalMfRecycling:
      for (const auto& w : weights.vectors) {
        for (int n = 0; n < h_tau.n_rx(); ++n) {
          gain += std::norm(row_dot(h, n, w, support));
        }
      }
      break;
    case BeamformerKind::kGStbcSuperimposed:
    case BeamformerKind::kGStbcTimeOrthogonal: {
      const ComplexMatrix eq = equivalent_channel(h_tau, weights);
      for (Eigen::Index k = 0; k < eq.cols(); ++k) {
        for (Eigen::Index n = 0; n < eq.rows(); ++n) {
          gain += std::norm(eq(n, k));
        }
      }
      break;
    }
  }
  return {gain, weights.kind};
}

GainSample mrc_baseline_gain(const ChannelSnapshot& h_tau, int tx_antenna) {
  if (tx_antenna < 0 || tx_antenna >= h_tau.m_tx()) {
    throw std::out_of_range("mrc_baseline_gain: antenna index out of range");
  }
  double gain = 0.0;
  for (int n = 0; n < h_tau.n_rx(); ++n) {
    gain += std::norm(h_tau.entries()(n, tx_antenna));
  }
  return {gain, BeamformerKind::kMrcBaseline};
}

double instantaneous_snr(const ComplexMatrix& h, const ComplexVector& u, const ComplexVector& w, double gamma) {
  if (u.size() != h.rows() || w.size() != h.cols()) {
    throw std::invalid_argument("instantaneous_snr: dimension mismatch");
  }
  const Complex z = u.dot(h * w);  // u^H H w
  return gamma * std::norm(z) / u.squaredNorm();
}

ComplexMatrix row_combiner(const TxWeights& weights, int n) {
  const auto pick = [&](std::initializer_list<std::size_t> idx) {
    ComplexMatrix c(weights.m_tx, static_cast<Eigen::Index>(idx.size()));
    Eigen::Index col = 0;
    for (auto i : idx) {
      c.col(col++) = weights.vectors.at(i);
    }
    return c;
  };
  const auto all = [&]() {
    ComplexMatrix c(weights.m_tx, static_cast<Eigen::Index>(weights.vectors.size()));
    for (std::size_t i = 0; i < weights.vectors.size(); ++i) {
      c.col(static_cast<Eigen::Index>(i)) = weights.vectors[i];
    }
    return c;
  };
  switch (weights.kind) {
    case BeamformerKind::kTimeOrthogonalMf:
      return pick({static_cast<std::size_t>(n)});
    case BeamformerKind::kTimeOrthogonalMfRecycling:
    case BeamformerKind::kGStbcSuperimposed:
      return all();
    case BeamformerKind::kGStbcTimeOrthogonal: {
      const int k_groups = weights.grouping->k_groups();
      ComplexMatrix c(weights.m_tx, k_groups);
      for (int k = 0; k < k_groups; ++k) {
        c.col(k) = weights.vectors.at(static_cast<std::size_t>(n * k_groups + k));
      }
      return c;
    }
    default:
      return pick({0});
  }
}

}  // namespace agedbf

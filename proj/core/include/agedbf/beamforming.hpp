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

#ifndef AGEDBF_BEAMFORMING_HPP
#define AGEDBF_BEAMFORMING_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "agedbf/fading_channel.hpp"
#include "agedbf/rng.hpp"

namespace agedbf {

enum class BeamformerKind {
  kSvdSingleStream,
  kSuperimposedMf,
  kTimeOrthogonalMf,
  kTimeOrthogonalMfRecycling,
  kMrcBaseline,
  kGStbcSuperimposed,
  kGStbcTimeOrthogonal,
};

/// Stable identifiers used in configs and CSV output
/// ("svd", "superimposed", "time_orthogonal", ...).
std::string_view to_string(BeamformerKind kind);
BeamformerKind parse_beamformer_kind(std::string_view name);

constexpr bool is_gstbc(BeamformerKind kind) {
  return kind == BeamformerKind::kGStbcSuperimposed || kind == BeamformerKind::kGStbcTimeOrthogonal;
}

/// Partition of the Tx antenna indices {0..M-1} into K groups of
/// physically adjacent antennas whose sizes differ by at most one.
struct GroupingPlan {
  int m_tx = 0;
  std::vector<std::vector<int>> groups;

  int k_groups() const noexcept { return static_cast<int>(groups.size()); }
  std::vector<int> sizes() const;
};

/// Transmit weights of one scheme. Every vector has length M and unit norm.
///
/// Layout of `vectors` per kind:
///   superimposed / SVD / MRC      one vector
///   time-orthogonal (+recycling)  N vectors, w_n aimed at Rx antenna n
///   G-STBC superimposed           K vectors, w_k zero outside group k
///   G-STBC time-orthogonal        N*K vectors, w_{n,k} at index n*K + k
struct TxWeights {
  BeamformerKind kind = BeamformerKind::kSuperimposedMf;
  std::vector<ComplexVector> vectors;
  std::optional<GroupingPlan> grouping;
  int n_rx = 0;
  int m_tx = 0;
};

struct GainSample {
  double value = 0.0;
  BeamformerKind kind = BeamformerKind::kSuperimposedMf;
};

struct SvdBeam {
  ComplexVector w;  // sum of right singular vectors, unit norm
  ComplexVector u;  // sum of left singular vectors (Rx combiner)
  double predicted_isnr_coeff = 0.0;  // (sum lambda_n)^2 / N
};

/// Single-stream SVD beamformer. Throws DegenerateChannelError when
/// rank(h0) < N (singular values below 1e-10 * largest).
SvdBeam svd_single_stream(const ChannelSnapshot& h0);

TxWeights svd_weights(const ChannelSnapshot& h0);

/// w = conj(sum_n h_n) / ||sum_n h_n||.
TxWeights superimposed_mf(const ChannelSnapshot& h0);

/// w_n = conj(h_n) / ||h_n||. With `recycling` the same weights are tagged
/// kTimeOrthogonalMfRecycling, whose gain combines all Rx antennas per slot.
TxWeights time_orthogonal_mf(const ChannelSnapshot& h0, bool recycling = false);

/// Unit vector on one Tx antenna.
TxWeights mrc_baseline_weights(int m_tx, int tx_antenna);

/// Contiguous blocks of floor(M/K) antennas; M mod K randomly chosen
/// groups receive one extra antenna.
GroupingPlan adjacent_grouping(int m_tx, int k_groups, SeededRng& rng);

/// Per-group matched filters for kind kGStbcSuperimposed or kGStbcTimeOrthogonal.
TxWeights gstbc_weights(const ChannelSnapshot& h0, const GroupingPlan& plan, BeamformerKind kind);

/// Dispatch on kind. G-STBC kinds need a plan; MRC uses `mrc_antenna`.
TxWeights build_weights(BeamformerKind kind, const ChannelSnapshot& h0,
                        const GroupingPlan* plan = nullptr, int mrc_antenna = 0);

/// N x K equivalent channel of a G-STBC scheme: entry (n, k) is the
/// projection of Rx row n on the weight serving group k.
ComplexMatrix equivalent_channel(const ChannelSnapshot& h, const TxWeights& weights);

/// Realized beamforming power gain of `weights` over channel `h_tau`.
GainSample realized_gain(const ChannelSnapshot& h_tau, const TxWeights& weights);

/// ||column tx_antenna of H||^2: one Tx antenna, maximum-ratio combining at the Rx.
GainSample mrc_baseline_gain(const ChannelSnapshot& h_tau, int tx_antenna);

/// gamma |u^H H w|^2 / (u^H u).
double instantaneous_snr(const ComplexMatrix& h, const ComplexVector& u, const ComplexVector& w,
                         double gamma = 1.0);

/// Weight vectors applied to Rx row n, as the columns of an M x L matrix.
/// The scheme gain is sum_n ||h_n^T C_n||^2 for these combiners C_n.
ComplexMatrix row_combiner(const TxWeights& weights, int n);

}  // namespace agedbf

#endif  // AGEDBF_BEAMFORMING_HPP

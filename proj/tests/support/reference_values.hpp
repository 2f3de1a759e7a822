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

#ifndef AGEDBF_TESTS_REFERENCE_VALUES_HPP
#define AGEDBF_TESTS_REFERENCE_VALUES_HPP

// Values computed ahead of time with 40-digit arithmetic (mpmath) and
// frozen here as regression anchors.

namespace ref {

inline constexpr double kCarrierHz = 3.5e9;
inline constexpr double kLagS = 5e-4;

// Bessel J0 at selected points.
inline constexpr double kJ0At0549779 = 0.9258513224777849;
inline constexpr double kJ0At8 = 0.17165080713755390609;
inline constexpr double kJ0At12 = 0.047689310796833536624;
inline constexpr double kJ0At17 = -0.16985425215118354791;
inline constexpr double kJ0At30 = -0.086367983581040211336;
inline constexpr double kJ0At50 = 0.055812327669251815005;
inline constexpr double kJ0AtMinus37 = -0.39923020337119110577;
inline constexpr double kJ0FirstZero = 2.4048255576957728;

// Aging at 3.5 GHz, 0.5 ms, c = 299792458 m/s.
inline constexpr double kDoppler15 = 175.12114997902983;
inline constexpr double kJ0v15 = 0.92575064535212182;
inline constexpr double kSigmaSq15 = 0.14298574263012998;
inline constexpr double kJ0Sq15 = 0.85701425736987002;
inline constexpr double kDoppler5 = 58.373716659676609;
inline constexpr double kJ0v5 = 0.99161000908890146;
inline constexpr double kSigmaSq5 = 0.016709589874708763;

// Normalized lag tau * f_d at sqrt(isnr0 / cap) = 0.92539.
inline constexpr double kLagAt092539 = 0.087777087401662415;

// Normal-approximation thresholds, n = 128, R = 0.5 (linear SNR).
inline constexpr double kIsnr0At8e6 = 0.92182570949092355;
inline constexpr double kIsnr0At1e5 = 0.91367237025910747;
inline constexpr double kIsnr0At1e6 = 0.99620466240439075;

}  // namespace ref

#endif  // AGEDBF_TESTS_REFERENCE_VALUES_HPP

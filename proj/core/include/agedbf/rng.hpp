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

#ifndef AGEDBF_RNG_HPP
#define AGEDBF_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>

namespace agedbf {

/// SplitMix64 finalizer. Used to decorrelate derived seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed of substream `index` under `master`. Distinct indices give
/// statistically independent streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Single-owner random stream.
///
/// The engine is std::mt19937_64; Gaussian variates use an explicit
/// Box-Muller transform so that a (seed, algorithm) pair yields the same
/// stream on every standard library.
class SeededRng {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/box-muller/v1";

  explicit SeededRng(std::uint64_t seed);

  static SeededRng substream(std::uint64_t master, std::uint64_t index) {
    return SeededRng(derive_seed(master, index));
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::string_view algorithm() const noexcept { return kAlgorithm; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Circularly-symmetric CN(0, 1): real and imaginary parts each N(0, 1/2).
  std::complex<double> complex_normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace agedbf

#endif  // AGEDBF_RNG_HPP

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

#include <benchmark/benchmark.h>

#include "agedbf/beamforming.hpp"
#include "agedbf/bounds.hpp"
#include "agedbf/fading_channel.hpp"
#include "agedbf/gain_stats.hpp"
#include "agedbf/rng.hpp"

namespace {

using namespace agedbf;

const AgingParams& params15() {
  static const AgingParams p = aging_params(15.0, 3.5e9, 5e-4);
  return p;
}

void BM_BesselJ0(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j0(x));
    x = x > 40.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_BesselJ0);

void BM_ChernoffBound(benchmark::State& state) {
  SeededRng rng(1);
  const auto h0 = sample_initial_channel(static_cast<int>(state.range(0)), 4, rng);
  const auto dist = gain_moments(h0, time_orthogonal_mf(h0, false), params15());
  for (auto _ : state) {
    benchmark::DoNotOptimize(chernoff_lower_bound(dist, 2e-6).value);
  }
}
BENCHMARK(BM_ChernoffBound)->Arg(10)->Arg(100)->Arg(500);

void BM_EvolveAndGain(benchmark::State& state) {
  SeededRng rng(2);
  const auto h0 = sample_initial_channel(static_cast<int>(state.range(0)), 4, rng);
  const auto w = superimposed_mf(h0);
  for (auto _ : state) {
    const auto h = evolve(h0, params15(), rng);
    benchmark::DoNotOptimize(realized_gain(h, w).value);
  }
}
BENCHMARK(BM_EvolveAndGain)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();

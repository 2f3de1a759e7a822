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

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "agedbf/parallel.hpp"
#include "agedbf/rng.hpp"

using namespace agedbf;

TEST_SUITE("rng") {

TEST_CASE("identical seeds give identical streams") {
  SeededRng a(42);
  SeededRng b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.complex_normal() == b.complex_normal());
  }
  CHECK(a.algorithm() == SeededRng::kAlgorithm);
  CHECK(a.seed() == 42);
}

TEST_CASE("substreams differ from each other and from the master") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t i = 0; i < 64; ++i) {
    auto s = SeededRng::substream(5, i);
    firsts.insert(s.next_u64());
  }
  CHECK(firsts.size() == 64);
  CHECK(derive_seed(5, 0) != derive_seed(6, 0));
  CHECK(derive_seed(5, 1) != derive_seed(5, 2));
}

TEST_CASE("uniform stays in (0, 1]") {
  SeededRng rng(1);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi <= 1.0);
}

TEST_CASE("uniform_index covers its range evenly") {
  SeededRng rng(2);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    ++counts[rng.uniform_index(7)];
  }
  for (int c : counts) {
    CHECK(std::abs(c - draws / 7) < 400);
  }
  CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("complex_normal is circular with unit power") {
  SeededRng rng(3);
  double re2 = 0.0;
  double im2 = 0.0;
  double reim = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const auto z = rng.complex_normal();
    re2 += z.real() * z.real();
    im2 += z.imag() * z.imag();
    reim += z.real() * z.imag();
  }
  CHECK(re2 / draws == doctest::Approx(0.5).epsilon(0.01));
  CHECK(im2 / draws == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::fabs(reim / draws) < 0.005);
}

}  // TEST_SUITE

TEST_SUITE("parallel") {

TEST_CASE("run_chunks returns results in chunk order for any worker count") {
  const auto fn = [](std::int64_t chunk, std::int64_t b, std::int64_t e) {
    auto rng = chunk_rng(9, 0, 0, static_cast<std::uint64_t>(chunk));
    double s = 0.0;
    for (std::int64_t i = b; i < e; ++i) {
      s += rng.uniform();
    }
    return s;
  };
  const auto one = run_chunks<double>(1003, 17, 1, fn);
  const auto four = run_chunks<double>(1003, 17, 4, fn);
  CHECK(one.size() == 59);
  CHECK(one == four);
}

TEST_CASE("run_chunks covers every index exactly once") {
  std::vector<std::atomic<int>> seen(500);
  run_chunks<int>(500, 64, 3, [&](std::int64_t, std::int64_t b, std::int64_t e) {
    for (std::int64_t i = b; i < e; ++i) {
      seen[static_cast<std::size_t>(i)]++;
    }
    return 0;
  });
  for (const auto& s : seen) {
    CHECK(s.load() == 1);
  }
}

TEST_CASE("run_chunks rethrows the lowest-index failure") {
  const auto fn = [](std::int64_t chunk, std::int64_t, std::int64_t) -> int {
    if (chunk == 2 || chunk == 5) {
      throw std::runtime_error("chunk " + std::to_string(chunk));
    }
    return 0;
  };
  try {
    run_chunks<int>(100, 10, 3, fn);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "chunk 2");
  }
}

}  // TEST_SUITE

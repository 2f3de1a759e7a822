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

#ifndef AGEDBF_PARALLEL_HPP
#define AGEDBF_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

#include "agedbf/rng.hpp"

namespace agedbf {

/// Random stream of one work chunk. Chunks are numbered globally, so the
/// stream a sample sees never depends on how many workers run.
inline SeededRng chunk_rng(std::uint64_t seed, std::uint64_t lane, std::uint64_t point, std::uint64_t chunk) {
  return SeededRng(derive_seed(derive_seed(derive_seed(seed, lane), point), chunk));
}

/// Split [0, total) into fixed chunks of `chunk_size` and evaluate
/// fn(chunk_index, begin, end) on up to `workers` threads. Results are
/// returned in chunk order so that reductions over them are reproducible.
/// The first exception (by chunk index) is rethrown after all threads join.
template <class Result, class Fn>
std::vector<Result> run_chunks(std::int64_t total, std::int64_t chunk_size, int workers, Fn&& fn) {
  if (total < 0 || chunk_size < 1) {
    throw std::invalid_argument("run_chunks: invalid total or chunk size");
  }
  const std::int64_t n_chunks = (total + chunk_size - 1) / chunk_size;
  std::vector<Result> results(static_cast<std::size_t>(n_chunks));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_chunks));
  std::atomic<std::int64_t> next{0};

  const auto work = [&]() {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) {
        return;
      }
      const std::int64_t begin = c * chunk_size;
      const std::int64_t end = std::min(total, begin + chunk_size);
      try {
        results[static_cast<std::size_t>(c)] = fn(c, begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(c)] = std::current_exception();
      }
    }
  };

  const int threads = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(n_chunks, 1)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int i = 0; i < threads; ++i) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return results;
}

}  // namespace agedbf

#endif  // AGEDBF_PARALLEL_HPP

// Copyright 2026 The PedEval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEDEVAL_PARALLEL_HPP_
#define PEDEVAL_PARALLEL_HPP_

#include <atomic>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pedeval {

// Resolves a --threads request: 0 consults PEDEVAL_THREADS, then falls
// back to the OpenMP default. Always >= 1.
int resolve_threads(int requested);

// Runs fn(i) for i in [0, n). Iterations must be independent and write
// only to their own output slots; every kernel built on this helper
// produces results that do not depend on the thread count. Exceptions do
// not cross the OpenMP region: the first one (lowest iteration index) is
// captured and rethrown after the loop.
template <typename Fn>
void parallel_for(std::int64_t n, int threads, Fn&& fn) {
#ifdef _OPENMP
  const int t = resolve_threads(threads);
  if (t > 1 && n > 1) {
    std::exception_ptr error;
    std::atomic<std::int64_t> error_index{n};
#pragma omp parallel for num_threads(t) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      if (error_index.load(std::memory_order_relaxed) < i) {
        continue;
      }
      try {
        fn(i);
      } catch (...) {
        std::int64_t prev = error_index.load();
        while (i < prev && !error_index.compare_exchange_weak(prev, i)) {
        }
#pragma omp critical(pedeval_parallel_error)
        if (error_index.load() == i) {
          error = std::current_exception();
        }
      }
    }
    if (error) {
      std::rethrow_exception(error);
    }
    return;
  }
#else
  (void)threads;
#endif
  for (std::int64_t i = 0; i < n; ++i) {
    fn(i);
  }
}

}  // namespace pedeval

#endif  // PEDEVAL_PARALLEL_HPP_

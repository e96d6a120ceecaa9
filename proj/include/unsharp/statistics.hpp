// Copyright 2026 The unsharp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "unsharp/errors.hpp"
#include "unsharp/random_stream.hpp"

namespace unsharp {

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  /// A single sample: the standard error is reported as 0 by convention.
  bool degenerate = false;
};

/// Monte Carlo estimate of a fidelity (F or its random-state average).
struct FidelityStatistic {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Arithmetic mean and standard error s / sqrt(N), s the N-1 sample deviation.
/// Sums run in index order. Throws InvalidInput for an empty span.
Summary summarize(std::span<const double> samples);

FidelityStatistic to_fidelity_statistic(const Summary& summary);

/// Resolves a requested worker count; 0 means one per hardware thread.
unsigned resolve_workers(unsigned requested);

/// Evaluates `trial(index, stream)` for index = 0..trials-1, each with
/// `derive_stream(seed, index)`, and returns the results in index order.
///
/// Trials are claimed dynamically by up to `workers` threads. Because each
/// trial owns its stream and writes only its own slot, the returned vector is
/// identical for every worker count. If any trial throws, the lowest failing
/// index is reported through TrialFailure after all workers stop.
template <class Result, class TrialFn>
std::vector<Result> run_trials(std::size_t trials, std::uint64_t seed, unsigned workers,
                               TrialFn&& trial) {
  std::vector<Result> results(trials);
  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(trials, 1)));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex failure_mutex;
  std::uint64_t failed_index = std::numeric_limits<std::uint64_t>::max();
  std::string failure_message;

  auto body = [&] {
    for (;;) {
      // A claimed index always runs, so every index below a failure is evaluated.
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t index = next.fetch_add(1, std::memory_order_relaxed);
      if (index >= trials) return;
      try {
        RandomStream stream = derive_stream(seed, index);
        results[index] = trial(static_cast<std::uint64_t>(index), stream);
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (index < failed_index) {
          failed_index = index;
          failure_message = e.what();
        }
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  if (threads <= 1) {
    body();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(body);
  }
  if (failed.load()) throw TrialFailure(failed_index, failure_message);
  return results;
}

}  // namespace unsharp

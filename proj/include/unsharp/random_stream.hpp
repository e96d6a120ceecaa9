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

#include <cstdint>
#include <random>

namespace unsharp {

/// A reproducible source of uniform and standard-normal variates.
///
/// Streams are cheap to construct and are never shared between concurrent
/// consumers: the ensemble harness hands each trial its own stream obtained
/// from `derive_stream`.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  /// Uniform on [0, 1).
  double uniform();
  double normal();
  std::uint64_t next_u64();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Returns the stream for trial `index` of an experiment seeded with `master_seed`.
///
/// Equivalent to `RandomStream(derive_seed(master_seed, index))`, where
/// `derive_seed` is `mix64(mix64(master_seed) ^ mix64(index + 0x9E3779B97F4A7C15))`.
/// The stream constructor expands its seed through `std::seed_seq`. The same
/// (seed, index) pair always yields the same stream, independent of how many
/// other streams exist or in which order they are created.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index);

/// Seed for a sub-experiment (e.g. one grid point) of a master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace unsharp

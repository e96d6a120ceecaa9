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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unsharp/continuous_inference.hpp"
#include "unsharp/gaussian_povm.hpp"
#include "unsharp/statistics.hpp"

namespace unsharp {

enum class ExperimentKind {
  /// Average fidelity over random pure states, direct route; grid in n.
  sequential_fidelity,
  /// Average fidelity from the hypothetical posterior's purity; grid in n.
  hypothetical_purity,
  /// Mean purity of the conditional master equation from 1/2; grid in t.
  continuum_trajectory,
  /// Mean purity of the discrete hypothetical posterior at n = steps(t); grid in t.
  continuum_compare,
  /// One sharp-ish measurement with dominant-eigenstate purification; grid in n.
  sharp_limit,
};

std::string_view to_string(ExperimentKind kind);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::hypothetical_purity;
  double precision = 20.0;
  std::vector<std::size_t> n_grid;
  std::vector<double> t_grid;
  double dt = kDefaultTimeStep;
  std::size_t trials = 10000;
  PurificationStrategy strategy = PurificationStrategy::random_eigenstate;
  TimeConvention time_convention = TimeConvention::nominal;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

/// Throws InvalidSettings when the spec violates a module contract.
void validate(const ExperimentSpec& spec);

struct GridPoint {
  /// n for step grids, t for time grids.
  double grid_value = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
  /// Closed-form value where the kind has one.
  std::optional<double> reference;
};

struct EnsembleStatistics {
  ExperimentKind kind = ExperimentKind::hypothetical_purity;
  std::vector<GridPoint> points;
};

/// Runs every trial of the experiment and summarizes per grid point.
///
/// Grid points of the path-based kinds (hypothetical_purity, continuum_*)
/// share trajectories: trial k is one run through all checkpoints using
/// derive_stream(seed, k). sequential_fidelity and sharp_limit grid point g
/// uses the independent seed derive_seed(seed, g). Output is bitwise
/// independent of `workers`.
EnsembleStatistics run_ensemble(const ExperimentSpec& spec);

}  // namespace unsharp

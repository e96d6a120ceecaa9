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

#include "unsharp/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "unsharp/errors.hpp"
#include "unsharp/sequential_inference.hpp"

namespace unsharp {

namespace {

template <class T>
void check_grid(const std::vector<T>& grid, const char* name) {
  if (grid.empty()) throw InvalidSettings(std::string(name) + " must not be empty");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw InvalidSettings(std::string(name) + " must be sorted ascending");
  }
}

bool uses_time_grid(ExperimentKind kind) {
  return kind == ExperimentKind::continuum_trajectory || kind == ExperimentKind::continuum_compare;
}

std::vector<GridPoint> summarize_paths(const std::vector<std::vector<double>>& paths,
                                       const std::vector<double>& grid_values) {
  std::vector<GridPoint> points;
  std::vector<double> column(paths.size());
  for (std::size_t g = 0; g < grid_values.size(); ++g) {
    for (std::size_t k = 0; k < paths.size(); ++k) column[k] = paths[k][g];
    const Summary s = summarize(column);
    points.push_back({grid_values[g], s.mean, s.std_error, s.samples, std::nullopt});
  }
  return points;
}

EnsembleStatistics run_direct(const ExperimentSpec& spec, PurificationStrategy strategy) {
  const MeasurementSettings settings(spec.precision);
  EnsembleStatistics out{spec.kind, {}};
  for (std::size_t g = 0; g < spec.n_grid.size(); ++g) {
    const std::size_t n = spec.n_grid[g];
    const FidelityStatistic f =
        fidelity_direct(settings, n, strategy, {spec.trials, derive_seed(spec.seed, g), spec.workers});
    GridPoint point{static_cast<double>(n), f.mean, f.std_error, f.samples, std::nullopt};
    if (spec.kind == ExperimentKind::sharp_limit) {
      point.reference = 2.0 / 3.0;
    } else {
      point.reference = mean_fidelity_closed_form(static_cast<double>(n), settings);
    }
    out.points.push_back(point);
  }
  return out;
}

EnsembleStatistics run_hypothetical(const ExperimentSpec& spec) {
  const MeasurementSettings settings(spec.precision);
  const auto paths = run_trials<std::vector<double>>(
      spec.trials, spec.seed, spec.workers, [&](std::uint64_t, RandomStream& rng) {
        std::vector<double> purities = hypothetical_purity_path(spec.n_grid, settings, rng);
        for (double& p : purities) p = (1.0 + p) / 3.0;
        return purities;
      });
  std::vector<double> grid(spec.n_grid.begin(), spec.n_grid.end());
  EnsembleStatistics out{spec.kind, summarize_paths(paths, grid)};
  for (GridPoint& p : out.points) p.reference = mean_fidelity_closed_form(p.grid_value, settings);
  return out;
}

EnsembleStatistics run_continuum_trajectory(const ExperimentSpec& spec) {
  std::vector<std::size_t> checkpoints;
  for (double t : spec.t_grid) checkpoints.push_back(static_cast<std::size_t>(std::llround(t / spec.dt)));
  const auto paths = run_trials<std::vector<double>>(
      spec.trials, spec.seed, spec.workers, [&](std::uint64_t, RandomStream& rng) {
        return trajectory_purity_path(DensityMatrix::fully_mixed(), checkpoints, spec.dt, rng);
      });
  EnsembleStatistics out{spec.kind, summarize_paths(paths, spec.t_grid)};
  for (GridPoint& p : out.points) p.reference = drift_purity(p.grid_value);
  return out;
}

EnsembleStatistics run_continuum_compare(const ExperimentSpec& spec) {
  const MeasurementSettings settings(spec.precision);
  const TimeMapping mapping(settings, spec.time_convention);
  std::vector<std::size_t> checkpoints;
  for (double t : spec.t_grid) checkpoints.push_back(static_cast<std::size_t>(std::llround(mapping.steps(t))));
  const auto paths = run_trials<std::vector<double>>(
      spec.trials, spec.seed, spec.workers, [&](std::uint64_t, RandomStream& rng) {
        return hypothetical_purity_path(checkpoints, settings, rng);
      });
  EnsembleStatistics out{spec.kind, summarize_paths(paths, spec.t_grid)};
  for (GridPoint& p : out.points) p.reference = drift_purity(p.grid_value);
  return out;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::sequential_fidelity:
      return "sequential-fidelity";
    case ExperimentKind::hypothetical_purity:
      return "hypothetical-purity";
    case ExperimentKind::continuum_trajectory:
      return "continuum-trajectory";
    case ExperimentKind::continuum_compare:
      return "continuum-compare";
    case ExperimentKind::sharp_limit:
      return "sharp-limit";
  }
  return "unknown";
}

void validate(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw InvalidSettings("trials must be at least 1");
  MeasurementSettings{spec.precision};
  if (uses_time_grid(spec.kind)) {
    check_grid(spec.t_grid, "t grid");
    if (spec.t_grid.front() < 0.0) throw InvalidSettings("t grid must be nonnegative");
    if (spec.kind == ExperimentKind::continuum_trajectory && (!(spec.dt > 0.0) || spec.dt > kMaxTimeStep)) {
      throw InvalidSettings("dt must lie in (0, " + std::to_string(kMaxTimeStep) + "]");
    }
  } else {
    check_grid(spec.n_grid, "n grid");
  }
}

EnsembleStatistics run_ensemble(const ExperimentSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case ExperimentKind::sequential_fidelity:
      return run_direct(spec, spec.strategy);
    case ExperimentKind::sharp_limit:
      return run_direct(spec, PurificationStrategy::dominant_eigenstate);
    case ExperimentKind::hypothetical_purity:
      return run_hypothetical(spec);
    case ExperimentKind::continuum_trajectory:
      return run_continuum_trajectory(spec);
    case ExperimentKind::continuum_compare:
      return run_continuum_compare(spec);
  }
  throw InvalidSettings("unknown experiment kind");
}

}  // namespace unsharp

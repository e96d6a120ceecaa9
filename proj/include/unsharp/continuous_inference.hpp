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
#include <optional>
#include <span>
#include <vector>

#include "unsharp/gaussian_povm.hpp"
#include "unsharp/qubit_algebra.hpp"
#include "unsharp/random_stream.hpp"

namespace unsharp {

inline constexpr double kDefaultTimeStep = 1e-4;
inline constexpr double kMaxTimeStep = 1e-3;

/// How a count of discrete measurements maps onto continuous time.
enum class TimeConvention {
  /// t = 12 n / Delta^2: each measurement advances time by 12 / Delta^2.
  nominal,
  /// t = n / (12 Delta^2). Under this mapping the per-unit-time drift and
  /// diffusion of the discrete random-axis process equal those of the
  /// conditional master equation (decoherence exp(-1/(2 Delta^2)) per
  /// measurement, averaged over isotropic axes, gives dr = -4 r dt).
  matched,
};

class TimeMapping {
 public:
  explicit TimeMapping(const MeasurementSettings& settings, TimeConvention convention = TimeConvention::nominal);

  /// Time advanced by one measurement.
  double time_per_step() const { return time_per_step_; }
  /// Measurements per unit time.
  double rate() const { return 1.0 / time_per_step_; }
  /// Throws DomainError for negative or non-finite n.
  double time(double steps) const;
  double steps(double time) const;

 private:
  double time_per_step_;
};

double time_from_steps(double n, const MeasurementSettings& settings,
                       TimeConvention convention = TimeConvention::nominal);

struct NoiseIncrement {
  Vec3 dw;
};

/// Three independent Normal(0, dt) components.
NoiseIncrement draw_noise(double dt, RandomStream& rng);

/// One Euler-Maruyama step of the conditional master equation in matrix form
///   d rho = -1/2 sum_i [s_i, [s_i, rho]] dt + sum_i {s_i - <s_i>, rho} dW_i,
/// followed by trace renormalization and `constrain_to_ball`.
/// Throws InvalidStep unless 0 < dt <= kMaxTimeStep.
DensityMatrix sme_step(const DensityMatrix& state, double dt, const NoiseIncrement& noise);

/// Raw Bloch-form increment -4 r dt + 2 (dW - r (r.dW)).
Vec3 bloch_increment(const Vec3& r, double dt, const NoiseIncrement& noise);

/// Bloch-form counterpart of sme_step; agrees with it pathwise.
Vec3 bloch_sde_step(const Vec3& r, double dt, const NoiseIncrement& noise);

/// Post-step physicality: a step that starts on the unit sphere ends on it
/// (the exact dynamics leaves pure states pure), and anything outside the
/// ball is scaled back to |r| = 1.
Vec3 constrain_to_ball(const Vec3& before, const Vec3& after);

/// Record increment dy = <sigma> dt + dW / 2, using the pre-step state.
Vec3 record_increment(const DensityMatrix& state, double dt, const NoiseIncrement& noise);

struct TrajectoryState {
  DensityMatrix state;
  double time = 0.0;
  /// Running integral of the record, when requested.
  std::optional<Vec3> record;
};

struct TrajectoryOptions {
  double t_max = 1.0;
  double dt = kDefaultTimeStep;
  /// Emit every `output_stride`-th step (the initial and final states are always emitted).
  std::size_t output_stride = 1;
  bool emit_record = false;
};

/// Number of steps of size dt covering [0, t_max].
std::size_t step_count(double t_max, double dt);

std::vector<TrajectoryState> simulate_trajectory(const DensityMatrix& initial, const TrajectoryOptions& options,
                                                 RandomStream& rng);

/// Purity after each checkpoint step count (sorted ascending) along one trajectory.
std::vector<double> trajectory_purity_path(const DensityMatrix& initial, std::span<const std::size_t> checkpoints,
                                           double dt, RandomStream& rng);

/// Drift-only purity from the fully mixed state:
///   1/2 + 1/2 (e^{8t} - 1) / (e^{8t} - 1/3).
/// Throws DomainError for t < 0.
double drift_purity(double t);

/// 1/2 + 1/6 (e^{96 n / Delta^2} - 1) / (e^{96 n / Delta^2} - 1/3).
double mean_fidelity_closed_form(double n, const MeasurementSettings& settings);

}  // namespace unsharp

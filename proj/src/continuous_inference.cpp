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

#include "unsharp/continuous_inference.hpp"

#include <algorithm>
#include <cmath>

#include "unsharp/errors.hpp"

namespace unsharp {

namespace {

void check_step(double dt) {
  if (!(dt > 0.0) || !(dt <= kMaxTimeStep)) {
    throw InvalidStep("time step must lie in (0, " + std::to_string(kMaxTimeStep) + "], got " +
                      std::to_string(dt));
  }
}

// With E = e^{-x}, the saturating purity is 1 - E / (3 - E). Each operation is
// monotone in E, so the rounded result is monotone in x and reaches 1 exactly.
double purity_deficit(double x) {
  const double e = std::exp(-x);
  return e / (3.0 - e);
}

}  // namespace

TimeMapping::TimeMapping(const MeasurementSettings& settings, TimeConvention convention)
    : time_per_step_(convention == TimeConvention::nominal ? 12.0 / settings.variance()
                                                           : 1.0 / (12.0 * settings.variance())) {}

double TimeMapping::time(double steps) const {
  if (!(steps >= 0.0) || !std::isfinite(steps)) throw DomainError("step count must be finite and >= 0");
  return steps * time_per_step_;
}

double TimeMapping::steps(double time) const {
  if (!(time >= 0.0) || !std::isfinite(time)) throw DomainError("time must be finite and >= 0");
  return time / time_per_step_;
}

double time_from_steps(double n, const MeasurementSettings& settings, TimeConvention convention) {
  return TimeMapping(settings, convention).time(n);
}

NoiseIncrement draw_noise(double dt, RandomStream& rng) {
  const double scale = std::sqrt(dt);
  NoiseIncrement noise;
  noise.dw.x = scale * rng.normal();
  noise.dw.y = scale * rng.normal();
  noise.dw.z = scale * rng.normal();
  return noise;
}

Vec3 constrain_to_ball(const Vec3& before, const Vec3& after) {
  const double length = norm(after);
  if (length > 1.0 || (norm(before) >= 1.0 - kBlochSlack && length > 0.0)) return after / length;
  return after;
}

DensityMatrix sme_step(const DensityMatrix& state, double dt, const NoiseIncrement& noise) {
  check_step(dt);
  const ComplexMatrix2 rho = state.matrix();
  const ComplexMatrix2 identity = ComplexMatrix2::identity();
  ComplexMatrix2 drift;
  ComplexMatrix2 diffusion;
  for (std::size_t i = 0; i < 3; ++i) {
    const ComplexMatrix2 s = ComplexMatrix2::pauli(i);
    const ComplexMatrix2 inner = s * rho - rho * s;
    drift = drift - Complex(0.5) * (s * inner - inner * s);
    const ComplexMatrix2 shifted = s - (s * rho).trace() * identity;
    diffusion = diffusion + Complex(noise.dw[i]) * (shifted * rho + rho * shifted);
  }
  ComplexMatrix2 next = rho + Complex(dt) * drift + diffusion;
  next = Complex(0.5) * (next + next.adjoint());
  const DensityMatrix stepped = DensityMatrix::from_matrix(next, OutOfBall::project);
  return DensityMatrix::from_bloch(constrain_to_ball(state.bloch(), stepped.bloch()), OutOfBall::project);
}

Vec3 bloch_increment(const Vec3& r, double dt, const NoiseIncrement& noise) {
  return -4.0 * dt * r + 2.0 * (noise.dw - dot(r, noise.dw) * r);
}

Vec3 bloch_sde_step(const Vec3& r, double dt, const NoiseIncrement& noise) {
  check_step(dt);
  return constrain_to_ball(r, r + bloch_increment(r, dt, noise));
}

Vec3 record_increment(const DensityMatrix& state, double dt, const NoiseIncrement& noise) {
  return dt * state.bloch() + 0.5 * noise.dw;
}

std::size_t step_count(double t_max, double dt) {
  check_step(dt);
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidSettings("t_max must be finite and positive");
  // Tolerate t_max values that are a multiple of dt up to rounding.
  return static_cast<std::size_t>(std::ceil(t_max / dt - 1e-9));
}

std::vector<TrajectoryState> simulate_trajectory(const DensityMatrix& initial, const TrajectoryOptions& options,
                                                 RandomStream& rng) {
  const std::size_t steps = step_count(options.t_max, options.dt);
  const std::size_t stride = std::max<std::size_t>(options.output_stride, 1);
  std::optional<Vec3> record;
  if (options.emit_record) record = Vec3{};

  std::vector<TrajectoryState> series;
  series.reserve(steps / stride + 2);
  series.push_back({initial, 0.0, record});

  Vec3 r = initial.bloch();
  for (std::size_t k = 1; k <= steps; ++k) {
    const NoiseIncrement noise = draw_noise(options.dt, rng);
    if (record) *record = *record + options.dt * r + 0.5 * noise.dw;
    r = bloch_sde_step(r, options.dt, noise);
    if (k % stride == 0 || k == steps) {
      series.push_back({DensityMatrix::from_bloch(r, OutOfBall::project), static_cast<double>(k) * options.dt, record});
    }
  }
  return series;
}

std::vector<double> trajectory_purity_path(const DensityMatrix& initial, std::span<const std::size_t> checkpoints,
                                           double dt, RandomStream& rng) {
  check_step(dt);
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw InvalidSettings("checkpoints must be sorted ascending");
  }
  std::vector<double> purities;
  purities.reserve(checkpoints.size());
  Vec3 r = initial.bloch();
  std::size_t done = 0;
  for (std::size_t target : checkpoints) {
    for (; done < target; ++done) r = bloch_sde_step(r, dt, draw_noise(dt, rng));
    purities.push_back(0.5 * (1.0 + norm_squared(r)));
  }
  return purities;
}

double drift_purity(double t) {
  if (!(t >= 0.0)) throw DomainError("drift purity needs t >= 0");
  return 1.0 - purity_deficit(8.0 * t);
}

double mean_fidelity_closed_form(double n, const MeasurementSettings& settings) {
  if (!(n >= 0.0)) throw DomainError("step count must be >= 0");
  return (2.0 - purity_deficit(96.0 * n / settings.variance())) / 3.0;
}

}  // namespace unsharp

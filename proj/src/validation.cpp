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

#include "unsharp/validation.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "unsharp/continuous_inference.hpp"
#include "unsharp/gaussian_povm.hpp"
#include "unsharp/sequential_inference.hpp"
#include "unsharp/statistics.hpp"

namespace unsharp {

namespace {

std::string with_precision(const std::string& name, double precision) {
  std::ostringstream os;
  os << name << "[delta=" << precision << "]";
  return os.str();
}

CheckResult completeness_check(double precision) {
  const MeasurementSettings settings(precision);
  const double defect =
      completeness_defect(MeasurementAxis::z(), settings, QuadratureSpec::relative(settings, 10.0, 10000));
  return {with_precision("completeness", precision), defect < 1e-9, defect, 1e-9};
}

CheckResult spectral_check(double precision, const ValidationOptions& options, std::uint64_t stream_index) {
  const MeasurementSettings settings(precision);
  const MeasurementSettings replay_settings(precision * options.injected_noise_scale);
  const std::size_t sequences = options.quick ? 5 : 20;
  RandomStream rng = derive_stream(options.seed, stream_index);
  double worst = 0.0;
  for (std::size_t s = 0; s < sequences; ++s) {
    const auto n = static_cast<std::size_t>(1 + rng.next_u64() % 200);
    const SequenceResult truth = run_sequence(random_pure_state(rng), n, settings, rng);
    const SequenceResult replay = replay_sequence(truth.outcomes, DensityMatrix::fully_mixed(), replay_settings);
    worst = std::max(worst, spectral_match(truth, replay));
  }
  return {with_precision("spectral-match", precision), worst <= 1e-9, worst, 1e-9};
}

CheckResult pathwise_check(const ValidationOptions& options) {
  RandomStream rng = derive_stream(options.seed, 1000);
  const double dt = 1e-4;
  DensityMatrix matrix_state = DensityMatrix::from_bloch({0.3, -0.2, 0.1});
  Vec3 bloch_state = matrix_state.bloch();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const NoiseIncrement noise = draw_noise(dt, rng);
    const NoiseIncrement scaled{options.injected_noise_scale * noise.dw};
    matrix_state = sme_step(matrix_state, dt, scaled);
    bloch_state = bloch_sde_step(bloch_state, dt, noise);
    worst = std::max(worst, norm(matrix_state.bloch() - bloch_state));
  }
  return {"bloch-vs-matrix", worst < 1e-8, worst, 1e-8};
}

CheckResult drift_derivative_check() {
  const double h = 1e-5;
  double worst = 0.0;
  for (int k = 0; k <= 99; ++k) {
    const double t = 0.01 + 0.01 * k;
    const double u_plus = 2.0 * drift_purity(t + h) - 1.0;
    const double u_minus = 2.0 * drift_purity(t - h) - 1.0;
    const double u = 2.0 * drift_purity(t) - 1.0;
    const double derivative = (u_plus - u_minus) / (2.0 * h);
    const double rhs = 4.0 * (1.0 - u) * (3.0 - u);
    worst = std::max(worst, std::abs(derivative - rhs) / std::abs(rhs));
  }
  return {"drift-ode-residual", worst < 1e-6, worst, 1e-6};
}

CheckResult saturation_identity_check() {
  const double threshold = 8.0 * DBL_EPSILON;
  double worst = 0.0;
  for (double precision : {1.0, 3.0, 10.0, 20.0, 30.0}) {
    const MeasurementSettings settings(precision);
    for (int n = 0; n <= 400; ++n) {
      const double lhs = mean_fidelity_closed_form(n, settings);
      const double rhs = 1.0 / 3.0 + drift_purity(time_from_steps(n, settings)) / 3.0;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return {"saturation-identity", worst <= threshold, worst, threshold};
}

// Full-noise SME ensemble from 1/2 against the drift-only closed form.
// Tolerance: 0.02 absolute beyond three standard errors of the ensemble mean.
CheckResult drift_dominance_check(const ValidationOptions& options) {
  const std::size_t trajectories = options.quick ? 100 : 400;
  const double dt = 1e-4;
  const std::vector<double> times{0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0};
  const double scale = options.injected_noise_scale;
  const auto paths = run_trials<std::vector<double>>(
      trajectories, derive_seed(options.seed, 2000), 1, [&](std::uint64_t, RandomStream& rng) {
        std::vector<double> purities;
        Vec3 r{};
        std::size_t done = 0;
        for (double t : times) {
          const auto target = static_cast<std::size_t>(std::llround(t / dt));
          for (; done < target; ++done) {
            const NoiseIncrement noise = draw_noise(dt, rng);
            r = bloch_sde_step(r, dt, {scale * noise.dw});
          }
          purities.push_back(0.5 * (1.0 + norm_squared(r)));
        }
        return purities;
      });
  // Reported value: the largest deviation net of three standard errors.
  double worst = 0.0;
  std::vector<double> column(paths.size());
  for (std::size_t g = 0; g < times.size(); ++g) {
    for (std::size_t k = 0; k < paths.size(); ++k) column[k] = paths[k][g];
    const Summary s = summarize(column);
    worst = std::max(worst, std::abs(s.mean - drift_purity(times[g])) - 3.0 * s.std_error);
  }
  return {"drift-dominance", worst <= 0.02, worst, 0.02};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  std::vector<CheckResult> results;
  for (double precision : options.precisions) results.push_back(completeness_check(precision));
  std::uint64_t stream = 0;
  for (double precision : options.precisions) results.push_back(spectral_check(precision, options, stream++));
  results.push_back(pathwise_check(options));
  results.push_back(drift_derivative_check());
  results.push_back(saturation_identity_check());
  results.push_back(drift_dominance_check(options));
  return results;
}

}  // namespace unsharp

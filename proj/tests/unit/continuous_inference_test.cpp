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

#include <gtest/gtest.h>

#include <cfloat>
#include <cmath>
#include <vector>

#include "dense_oracle.hpp"
#include "unsharp/errors.hpp"

using namespace unsharp;

namespace {

constexpr double kDriftAtOne = 0.9998881666187258;
constexpr double kLog3Over8 = 0.13732653608351372;
constexpr double kSat2 = 0.5800466045134403;
constexpr double kSat5 = 0.6294657420649241;
constexpr double kSat10 = 0.6562725841137812;
constexpr double kSat20 = 0.665749734955873;
constexpr double kSat40 = 0.6666591410816016;

oracle::Vec as_oracle(const Vec3& v) { return {v.x, v.y, v.z}; }

// Euler step of the measurement master equation written with dense matrices:
// rho + sum_i [ (s_i rho s_i - rho) dt + (s_i rho + rho s_i - 2 tr(s_i rho) rho) dW_i ].
oracle::Vec dense_sme_step(const Vec3& r, double dt, const Vec3& dw) {
  const oracle::Mat rho = oracle::density(as_oracle(r));
  oracle::Mat next = rho;
  for (int i = 0; i < 3; ++i) {
    const oracle::Mat s = oracle::pauli(i);
    const oracle::Mat srs = oracle::mul(oracle::mul(s, rho), s);
    next = oracle::add(next, oracle::scale(dt, oracle::add(srs, oracle::scale(-1.0, rho))));
    const oracle::C expect = oracle::trace(oracle::mul(s, rho));
    const oracle::Mat anti = oracle::add(oracle::mul(s, rho), oracle::mul(rho, s));
    next = oracle::add(next, oracle::scale(dw[static_cast<std::size_t>(i)], oracle::add(anti, oracle::scale(-2.0 * expect, rho))));
  }
  return oracle::bloch(next);
}

NoiseIncrement fixed_noise(double x, double y, double z) { return {{x, y, z}}; }

}  // namespace

TEST(SmeStep, Examples) {
  const NoiseIncrement quiet = fixed_noise(0, 0, 0);
  EXPECT_EQ(sme_step(DensityMatrix::fully_mixed(), 1e-3, quiet).bloch(), (Vec3{0, 0, 0}));
  EXPECT_NEAR(sme_step(DensityMatrix::from_bloch({0, 0, 0.5}), 1e-3, quiet).bloch().z, 0.498, 1e-15);
  // The unit sphere is invariant: pure states stay pure.
  EXPECT_NEAR(purity(sme_step(DensityMatrix::pure({0, 0, 1}), 1e-3, quiet)), 1.0, 1e-15);
  const DensityMatrix kicked = sme_step(DensityMatrix::fully_mixed(), 1e-4, fixed_noise(0.01, 0, 0));
  EXPECT_NEAR(kicked.bloch().x, 0.02, 1e-15);
}

TEST(SmeStep, MatchesDenseMatrixEuler) {
  RandomStream rng(51);
  for (int k = 0; k < 500; ++k) {
    const Vec3 r = 0.8 * std::cbrt(rng.uniform()) * random_unit_vector(rng);
    const double dt = 1e-4;
    const NoiseIncrement noise = draw_noise(dt, rng);
    const Vec3 got = sme_step(DensityMatrix::from_bloch(r), dt, noise).bloch();
    const oracle::Vec expected = dense_sme_step(r, dt, noise.dw);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(got[i], expected[i], 1e-14);
  }
}

TEST(SmeStep, RejectsInvalidStep) {
  const NoiseIncrement quiet = fixed_noise(0, 0, 0);
  for (double dt : {0.0, -1e-4, 2e-3, static_cast<double>(NAN)}) {
    EXPECT_THROW(sme_step(DensityMatrix::fully_mixed(), dt, quiet), InvalidStep) << dt;
    EXPECT_THROW(bloch_sde_step({0, 0, 0}, dt, quiet), InvalidStep) << dt;
  }
  EXPECT_NO_THROW(sme_step(DensityMatrix::fully_mixed(), kMaxTimeStep, quiet));
}

TEST(BlochIncrement, Examples) {
  const Vec3 dr = bloch_increment({0, 0, 0.5}, 1e-3, fixed_noise(0.01, 0, 0.02));
  EXPECT_NEAR(dr.x, 0.02, 1e-15);
  EXPECT_NEAR(dr.y, 0.0, 1e-15);
  // -4 r dt + 2 (dW_z - r_z (r.dW)) = -0.002 + 2 (0.02 - 0.005).
  EXPECT_NEAR(dr.z, 0.028, 1e-15);
  EXPECT_EQ(bloch_increment({0, 0, 0}, 1e-3, fixed_noise(0, 0, 0)), (Vec3{0, 0, 0}));
}

TEST(BlochIncrement, AgreesWithMatrixFormPathwise) {
  RandomStream rng(52);
  DensityMatrix matrix_state = DensityMatrix::from_bloch({0.3, -0.2, 0.1});
  Vec3 r = matrix_state.bloch();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const NoiseIncrement noise = draw_noise(1e-4, rng);
    matrix_state = sme_step(matrix_state, 1e-4, noise);
    r = bloch_sde_step(r, 1e-4, noise);
    worst = std::max(worst, norm(matrix_state.bloch() - r));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(BlochSdeStep, PurityFollowsItoDynamics) {
  // For u = |r|^2: du = 4 (1 - u)(3 - u) dt + 4 (1 - u) r.dW. The step is small
  // enough that O(dt) corrections to the second moment stay below 1%.
  const double dt = 1e-4;
  const int samples = 10000;
  RandomStream rng(53);
  for (double u : {0.1, 0.3, 0.5}) {
    double drift_sum = 0.0;
    double square_sum = 0.0;
    for (int k = 0; k < samples; ++k) {
      const Vec3 r = std::sqrt(u) * random_unit_vector(rng);
      const NoiseIncrement noise = draw_noise(dt, rng);
      const double du = norm_squared(bloch_sde_step(r, dt, noise)) - u;
      // Subtracting the martingale part isolates the drift with low variance.
      drift_sum += du - 4.0 * (1.0 - u) * dot(r, noise.dw);
      square_sum += du * du;
    }
    const double drift = drift_sum / samples / dt;
    const double diffusion = square_sum / samples / dt;
    EXPECT_NEAR(drift, 4.0 * (1.0 - u) * (3.0 - u), 0.05 * 4.0 * (1.0 - u) * (3.0 - u)) << "u=" << u;
    EXPECT_NEAR(diffusion, 16.0 * (1.0 - u) * (1.0 - u) * u, 0.05 * 16.0 * (1.0 - u) * (1.0 - u) * u) << "u=" << u;
  }
}

TEST(RecordIncrement, ExamplesAndMean) {
  const Vec3 dy = record_increment(DensityMatrix::from_bloch({0.2, 0, -0.4}), 1e-3, fixed_noise(0.02, 0, 0));
  EXPECT_NEAR(dy.x, 2e-4 + 0.01, 1e-16);
  EXPECT_NEAR(dy.z, -4e-4, 1e-16);

  RandomStream rng(54);
  const DensityMatrix state = DensityMatrix::from_bloch({0.5, 0.5, 0.5});
  const double dt = 1e-3;
  const int draws = 100000;
  Vec3 sum{};
  for (int k = 0; k < draws; ++k) sum = sum + record_increment(state, dt, draw_noise(dt, rng));
  // Each component has standard deviation sqrt(dt) / 2.
  const double bound = 4.0 * 0.5 * std::sqrt(dt / draws);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(sum[i] / draws, 0.5 * dt, bound);
}

TEST(SimulateTrajectory, MixedStatePurifies) {
  TrajectoryOptions options;
  options.t_max = 2.0;
  options.output_stride = 100000;
  const int runs = 200;
  int pure_enough = 0;
  for (int k = 0; k < runs; ++k) {
    RandomStream rng = derive_stream(55, static_cast<std::uint64_t>(k));
    const auto series = simulate_trajectory(DensityMatrix::fully_mixed(), options, rng);
    if (purity(series.back().state) > 0.99) ++pure_enough;
  }
  EXPECT_GE(pure_enough, static_cast<int>(0.99 * runs));
}

TEST(SimulateTrajectory, PureStaysPure) {
  TrajectoryOptions options;
  options.t_max = 1.0;
  options.output_stride = 1000;
  RandomStream rng(56);
  for (const TrajectoryState& s : simulate_trajectory(DensityMatrix::pure({1, -1, 0.5}), options, rng)) {
    EXPECT_NEAR(purity(s.state), 1.0, 1e-6);
  }
}

TEST(SimulateTrajectory, StrideAndDeterminism) {
  TrajectoryOptions options;
  options.t_max = 0.01;
  options.dt = 1e-4;
  options.output_stride = 30;
  options.emit_record = true;
  RandomStream a(57);
  RandomStream b(57);
  const auto first = simulate_trajectory(DensityMatrix::fully_mixed(), options, a);
  const auto second = simulate_trajectory(DensityMatrix::fully_mixed(), options, b);
  ASSERT_EQ(first.size(), 5u);
  EXPECT_DOUBLE_EQ(first[1].time, 30 * 1e-4);
  EXPECT_NEAR(first.back().time, 0.01, 1e-15);
  EXPECT_EQ(first.front().record, (Vec3{}));
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].state, second[i].state);
    EXPECT_EQ(first[i].record, second[i].record);
  }
  options.emit_record = false;
  RandomStream c(57);
  EXPECT_FALSE(simulate_trajectory(DensityMatrix::fully_mixed(), options, c).back().record.has_value());
  EXPECT_EQ(step_count(1.0, 1e-4), 10000u);
  EXPECT_THROW(step_count(0.0, 1e-4), InvalidSettings);
}

TEST(TrajectoryPurityPath, AgreesWithSimulateTrajectory) {
  TrajectoryOptions options;
  options.t_max = 0.05;
  options.output_stride = 250;
  RandomStream a(58);
  const auto series = simulate_trajectory(DensityMatrix::fully_mixed(), options, a);
  RandomStream b(58);
  const std::size_t checkpoints[] = {0, 250, 500};
  const std::vector<double> path = trajectory_purity_path(DensityMatrix::fully_mixed(), checkpoints, 1e-4, b);
  ASSERT_EQ(series.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(path[i], purity(series[i].state));
}

TEST(DriftPurity, Examples) {
  EXPECT_EQ(drift_purity(0.0), 0.5);
  EXPECT_NEAR(drift_purity(1.0), kDriftAtOne, 1e-15);
  EXPECT_NEAR(drift_purity(kLog3Over8), 0.875, 1e-15);
  EXPECT_EQ(drift_purity(1e6), 1.0);
  EXPECT_THROW(drift_purity(-1e-9), DomainError);
}

TEST(DriftPurity, SolvesDeterministicPurityEquation) {
  // With u = 2 P - 1 the noiseless equation is du/dt = 4 (1 - u)(3 - u).
  const double h = 1e-5;
  for (double t = 0.01; t <= 1.0; t += 0.01) {
    const double u = 2.0 * drift_purity(t) - 1.0;
    const double derivative = (drift_purity(t + h) - drift_purity(t - h)) / h;
    EXPECT_NEAR(derivative, 4.0 * (1.0 - u) * (3.0 - u), 1e-6) << "t=" << t;
  }
  double previous = drift_purity(0.0);
  for (double t = 0.05; t < 5.0; t += 0.05) {
    const double current = drift_purity(t);
    if (t < 2.0) {
      EXPECT_GT(current, previous);
    } else {
      EXPECT_GE(current, previous);
    }
    previous = current;
  }
}

TEST(MeanFidelityClosedForm, Examples) {
  const MeasurementSettings settings(20.0);
  EXPECT_EQ(mean_fidelity_closed_form(0, settings), 0.5);
  EXPECT_NEAR(mean_fidelity_closed_form(2, settings), kSat2, 1e-15);
  EXPECT_NEAR(mean_fidelity_closed_form(5, settings), kSat5, 1e-15);
  EXPECT_NEAR(mean_fidelity_closed_form(10, settings), kSat10, 1e-15);
  EXPECT_NEAR(mean_fidelity_closed_form(20, settings), kSat20, 1e-15);
  EXPECT_NEAR(mean_fidelity_closed_form(40, settings), kSat40, 1e-15);
  EXPECT_LE(mean_fidelity_closed_form(1e9, settings), 2.0 / 3.0);
  EXPECT_THROW(mean_fidelity_closed_form(-1, settings), DomainError);
}

TEST(MeanFidelityClosedForm, EqualsPurityIdentityOnTimeAxis) {
  for (double delta : {1.0, 9.0, 20.0, 50.0}) {
    const MeasurementSettings settings(delta);
    for (double n : {0.0, 1.0, 3.0, 17.0, 100.0, 1000.0}) {
      const double via_purity = (1.0 + drift_purity(time_from_steps(n, settings))) / 3.0;
      EXPECT_NEAR(mean_fidelity_closed_form(n, settings), via_purity, 8 * DBL_EPSILON);
    }
  }
}

TEST(TimeMapping, Examples) {
  const MeasurementSettings settings(20.0);
  EXPECT_DOUBLE_EQ(time_from_steps(40, settings), 1.2);
  EXPECT_DOUBLE_EQ(time_from_steps(40, settings, TimeConvention::matched), 1.0 / 120.0);
  EXPECT_EQ(time_from_steps(0, settings), 0.0);
  const TimeMapping nominal(settings);
  EXPECT_DOUBLE_EQ(nominal.steps(nominal.time(123.0)), 123.0);
  EXPECT_DOUBLE_EQ(nominal.rate(), 400.0 / 12.0);
  EXPECT_DOUBLE_EQ(TimeMapping(settings, TimeConvention::matched).steps(1.0), 4800.0);
  EXPECT_THROW(time_from_steps(-1, settings), DomainError);
  EXPECT_THROW(nominal.steps(-0.5), DomainError);
}

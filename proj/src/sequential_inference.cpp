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

#include "unsharp/sequential_inference.hpp"

#include <algorithm>
#include <cmath>

#include "unsharp/errors.hpp"

namespace unsharp {

namespace {

void require_trials(const TrialPlan& plan) {
  if (plan.trials < 1) throw InvalidSettings("trials must be at least 1");
}

void check_sorted(std::span<const std::size_t> checkpoints) {
  if (!std::is_sorted(checkpoints.begin(), checkpoints.end())) {
    throw InvalidSettings("checkpoints must be sorted ascending");
  }
}

}  // namespace

void require_pure(const DensityMatrix& state) {
  if (purity(state) < 1.0 - kPureTolerance) {
    throw InvalidState("fidelity experiments need a pure true state, purity is " +
                       std::to_string(purity(state)));
  }
}

// sqrt(g+-) = exp(m +- h), m = (log g+ + log g-)/4, h = (log g+ - log g-)/4.
// Pulling out exp(m + |h|) leaves ((1 + e)/2) 1 + sign(h) ((1 - e)/2) n.sigma
// with e = exp(-2|h|), whose largest eigenvalue is exactly 1.
ScaledOperator effect_square_root(const GaussianEffect& effect) {
  const double m = 0.5 * effect.log_geometric_weight();
  const double h = 0.5 * effect.half_log_ratio();
  const double e = std::exp(-2.0 * std::abs(h));
  const double sign = h >= 0.0 ? 1.0 : -1.0;
  return {GeneralOperator::hermitian(0.5 * (1.0 + e), sign * 0.5 * (1.0 - e) * effect.axis().direction()),
          m + std::abs(h)};
}

void KrausChain::append(const GaussianEffect& effect) {
  const ScaledOperator root = effect_square_root(effect);
  const GeneralOperator product = root.op * op_;
  const GeneralOperator gram = product.adjoint() * product;
  const double largest = gram.identity_part().real() + norm(gram.real_pauli_part());
  if (!(largest > 0.0) || !std::isfinite(largest)) {
    throw DegenerateUpdate("Kraus product lost all support at step " + std::to_string(length_ + 1));
  }
  const double singular = std::sqrt(largest);
  op_ = Complex(1.0 / singular) * product;
  log_norm_ += root.log_scale + std::log(singular);
  ++length_;
}

GeneralOperator KrausChain::unit_effect() const { return op_.adjoint() * op_; }

KrausChain chain_append(KrausChain chain, const GaussianEffect& effect) {
  chain.append(effect);
  return chain;
}

DensityMatrix sequence_estimate(const KrausChain& chain) {
  const GeneralOperator gram = chain.unit_effect();
  const double half_trace = gram.identity_part().real();
  return DensityMatrix::from_bloch(gram.real_pauli_part() / half_trace, OutOfBall::project);
}

SequenceResult run_sequence(const DensityMatrix& initial, std::size_t n, const MeasurementSettings& settings,
                            RandomStream& rng) {
  SequenceResult out;
  out.outcomes.reserve(n);
  DensityMatrix state = initial;
  for (std::size_t k = 0; k < n; ++k) {
    const MeasurementAxis axis = random_axis(rng);
    const double outcome = sample_outcome(state, axis, settings, rng);
    const GaussianEffect effect(axis, settings, outcome);
    state = posterior_update(state, effect);
    out.chain.append(effect);
    out.outcomes.push_back({axis, outcome});
  }
  out.aposteriori = state;
  out.estimate = sequence_estimate(out.chain);
  return out;
}

SequenceResult hypothetical_run(std::size_t n, const MeasurementSettings& settings, RandomStream& rng) {
  return run_sequence(DensityMatrix::fully_mixed(), n, settings, rng);
}

SequenceResult replay_sequence(std::span<const RecordedOutcome> outcomes, const DensityMatrix& initial,
                               const MeasurementSettings& settings) {
  SequenceResult out;
  out.outcomes.assign(outcomes.begin(), outcomes.end());
  DensityMatrix state = initial;
  for (const RecordedOutcome& recorded : outcomes) {
    const GaussianEffect effect(recorded.axis, settings, recorded.outcome);
    state = posterior_update(state, effect);
    out.chain.append(effect);
  }
  out.aposteriori = state;
  out.estimate = sequence_estimate(out.chain);
  return out;
}

double spectral_match(const SequenceResult& truth, const SequenceResult& replay) {
  if (truth.outcomes != replay.outcomes) {
    throw InvalidComparison("spectral match needs identical outcome lists (" +
                            std::to_string(truth.outcomes.size()) + " vs " +
                            std::to_string(replay.outcomes.size()) + " entries)");
  }
  const SpectralDecomposition a = spectral_decompose(truth.estimate);
  const SpectralDecomposition b = spectral_decompose(replay.aposteriori);
  return std::max(std::abs(a.eigenvalue_plus - b.eigenvalue_plus),
                  std::abs(a.eigenvalue_minus - b.eigenvalue_minus));
}

std::vector<double> hypothetical_purity_path(std::span<const std::size_t> checkpoints,
                                             const MeasurementSettings& settings, RandomStream& rng) {
  check_sorted(checkpoints);
  std::vector<double> purities;
  purities.reserve(checkpoints.size());
  DensityMatrix state;
  std::size_t done = 0;
  for (std::size_t target : checkpoints) {
    for (; done < target; ++done) {
      const MeasurementAxis axis = random_axis(rng);
      const double outcome = sample_outcome(state, axis, settings, rng);
      state = posterior_update(state, GaussianEffect(axis, settings, outcome));
    }
    purities.push_back(purity(state));
  }
  return purities;
}

double direct_fidelity_trial(const DensityMatrix& truth, std::size_t n, const MeasurementSettings& settings,
                             PurificationStrategy strategy, RandomStream& rng) {
  const SequenceResult result = run_sequence(truth, n, settings, rng);
  return expected_purified_fidelity(result.estimate, strategy, truth);
}

FidelityStatistic fidelity_direct(const MeasurementSettings& settings, std::size_t n,
                                  PurificationStrategy strategy, const TrialPlan& plan) {
  require_trials(plan);
  const auto samples = run_trials<double>(plan.trials, plan.seed, plan.workers,
                                          [&](std::uint64_t, RandomStream& rng) {
                                            const DensityMatrix truth = random_pure_state(rng);
                                            return direct_fidelity_trial(truth, n, settings, strategy, rng);
                                          });
  return to_fidelity_statistic(summarize(samples));
}

FidelityStatistic fidelity_direct_fixed(const DensityMatrix& truth, const MeasurementSettings& settings,
                                        std::size_t n, PurificationStrategy strategy, const TrialPlan& plan) {
  require_trials(plan);
  require_pure(truth);
  const auto samples = run_trials<double>(plan.trials, plan.seed, plan.workers,
                                          [&](std::uint64_t, RandomStream& rng) {
                                            return direct_fidelity_trial(truth, n, settings, strategy, rng);
                                          });
  return to_fidelity_statistic(summarize(samples));
}

FidelityStatistic fidelity_hypothetical_fixed(const DensityMatrix& truth, const MeasurementSettings& settings,
                                              std::size_t n, const TrialPlan& plan) {
  require_trials(plan);
  require_pure(truth);
  const auto samples = run_trials<double>(plan.trials, plan.seed, plan.workers,
                                          [&](std::uint64_t, RandomStream& rng) {
                                            const SequenceResult run = hypothetical_run(n, settings, rng);
                                            const double overlap = fidelity(run.estimate, truth);
                                            return 2.0 * overlap * overlap;
                                          });
  return to_fidelity_statistic(summarize(samples));
}

FidelityStatistic fidelity_purity(const MeasurementSettings& settings, std::size_t n, const TrialPlan& plan) {
  require_trials(plan);
  const std::size_t checkpoint[] = {n};
  const auto samples = run_trials<double>(plan.trials, plan.seed, plan.workers,
                                          [&](std::uint64_t, RandomStream& rng) {
                                            return (1.0 + hypothetical_purity_path(checkpoint, settings, rng)[0]) / 3.0;
                                          });
  return to_fidelity_statistic(summarize(samples));
}

}  // namespace unsharp

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
#include <span>
#include <vector>

#include "unsharp/gaussian_povm.hpp"
#include "unsharp/qubit_algebra.hpp"
#include "unsharp/random_stream.hpp"
#include "unsharp/statistics.hpp"

namespace unsharp {

/// Purity floor for states fed to fidelity experiments.
inline constexpr double kPureTolerance = 1e-9;

/// Throws InvalidState unless purity(state) >= 1 - kPureTolerance.
void require_pure(const DensityMatrix& state);

/// Effect square root Pi^{1/2}(sigma) = exp(log_scale) * op, with op's largest
/// singular value equal to 1.
struct ScaledOperator {
  GeneralOperator op;
  double log_scale = 0.0;
};

ScaledOperator effect_square_root(const GaussianEffect& effect);

/// A = Pi_n^{1/2}(sigma_n) ... Pi_1^{1/2}(sigma_1), held as a unit-norm operator
/// plus the log of the discarded scale. The sequence POVM element is
/// Pi_n = exp(2 log_norm) A^dagger A.
///
/// tr Pi_n shrinks roughly like (2 pi Delta^2)^(-n/2), so the raw product
/// underflows after a few hundred steps; renormalizing every append keeps A
/// at unit largest singular value.
class KrausChain {
 public:
  KrausChain() = default;

  const GeneralOperator& op() const { return op_; }
  double log_norm() const { return log_norm_; }
  std::size_t length() const { return length_; }

  void append(const GaussianEffect& effect);

  /// A^dagger A with the scale factor dropped; Hermitian, positive semidefinite.
  GeneralOperator unit_effect() const;

 private:
  GeneralOperator op_ = GeneralOperator::identity();
  double log_norm_ = 0.0;
  std::size_t length_ = 0;
};

KrausChain chain_append(KrausChain chain, const GaussianEffect& effect);

/// A^dagger A / tr[A^dagger A].
DensityMatrix sequence_estimate(const KrausChain& chain);

struct RecordedOutcome {
  MeasurementAxis axis;
  double outcome = 0.0;

  friend bool operator==(const RecordedOutcome&, const RecordedOutcome&) = default;
};

struct SequenceResult {
  std::vector<RecordedOutcome> outcomes;
  /// rho_n: the step-by-step posterior of the initial state.
  DensityMatrix aposteriori;
  KrausChain chain;
  /// rho'_n = A^dagger A / tr.
  DensityMatrix estimate;
};

/// n measurements along fresh random axes, each outcome drawn from the current
/// aposteriori state. Per step the stream is consumed as: axis (3 normals),
/// branch (1 uniform), smearing (1 normal).
SequenceResult run_sequence(const DensityMatrix& initial, std::size_t n,
                            const MeasurementSettings& settings, RandomStream& rng);

/// run_sequence from the fully mixed state; the aposteriori field is then the
/// hypothetical posterior, and outcomes follow the hypothetical law tr[Pi_n]/2.
SequenceResult hypothetical_run(std::size_t n, const MeasurementSettings& settings, RandomStream& rng);

/// Re-applies a recorded outcome list to `initial`, recomputing every effect.
SequenceResult replay_sequence(std::span<const RecordedOutcome> outcomes, const DensityMatrix& initial,
                               const MeasurementSettings& settings);

/// Max difference between the sorted eigenvalues of `truth.estimate` and of
/// `replay.aposteriori`, where `replay` re-ran truth's outcomes from 1/2.
/// A^dagger A and A A^dagger share a spectrum, so the exact value is 0.
/// Throws InvalidComparison if the outcome lists differ.
double spectral_match(const SequenceResult& truth, const SequenceResult& replay);

/// Purity of the hypothetical posterior after each checkpoint step count.
/// Checkpoints must be sorted ascending; one trajectory serves all of them.
std::vector<double> hypothetical_purity_path(std::span<const std::size_t> checkpoints,
                                             const MeasurementSettings& settings, RandomStream& rng);

struct TrialPlan {
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// 0: one worker per hardware thread. Results do not depend on this.
  unsigned workers = 0;
};

/// Fidelity of one trial: random pure truth, run_sequence, purified estimate.
///
/// Records the conditional expectation of the purified fidelity given the
/// measurement record (expected_purified_fidelity), so an empty sequence
/// scores exactly 1/2.
double direct_fidelity_trial(const DensityMatrix& truth, std::size_t n, const MeasurementSettings& settings,
                             PurificationStrategy strategy, RandomStream& rng);

/// Monte Carlo of the average fidelity over random pure states, direct route.
FidelityStatistic fidelity_direct(const MeasurementSettings& settings, std::size_t n,
                                  PurificationStrategy strategy, const TrialPlan& plan);

/// Direct route for one fixed pure truth (outcomes sampled from that state).
FidelityStatistic fidelity_direct_fixed(const DensityMatrix& truth, const MeasurementSettings& settings,
                                        std::size_t n, PurificationStrategy strategy, const TrialPlan& plan);

/// F = 2 E_hyp[(tr[rho'_n rho])^2], the expectation over records drawn by hypothetical_run.
FidelityStatistic fidelity_hypothetical_fixed(const DensityMatrix& truth, const MeasurementSettings& settings,
                                              std::size_t n, const TrialPlan& plan);

/// Average fidelity as (1 + E_hyp[purity(rho_n)]) / 3.
FidelityStatistic fidelity_purity(const MeasurementSettings& settings, std::size_t n, const TrialPlan& plan);

}  // namespace unsharp

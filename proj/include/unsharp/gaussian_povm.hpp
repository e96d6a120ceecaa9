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
#include <string>

#include "unsharp/qubit_algebra.hpp"
#include "unsharp/random_stream.hpp"

namespace unsharp {

/// sqrt(96): below this precision the continuum-limit curves are not expected to apply.
inline const double kContinuumAdvisoryPrecision = 9.797958971132712;

/// Precision Delta of the Gaussian smearing, in units of the polarization eigenvalues.
class MeasurementSettings {
 public:
  /// Throws InvalidSettings unless precision is finite and > 0.
  explicit MeasurementSettings(double precision);

  double precision() const { return precision_; }
  double variance() const { return precision_ * precision_; }

  /// A warning message when the precision is below `threshold`. Never an error:
  /// small precisions are legitimate for sharp-limit runs.
  std::optional<std::string> continuum_advisory(double threshold = kContinuumAdvisoryPrecision) const;

 private:
  double precision_;
};

/// log of (2 pi Delta^2)^(-1/2) exp(-x^2 / (2 Delta^2)).
double gaussian_log_density(double x, double precision);

/// One element Pi(sigma) = g(sigma - 1) P+(n) + g(sigma + 1) P-(n) of the Gaussian POVM.
///
/// Weights are kept in log form. For |sigma| >> Delta both weights underflow
/// while their ratio stays well conditioned, so consumers work with
/// `half_log_ratio()` = (log g+ - log g-) / 2 = sigma / Delta^2.
class GaussianEffect {
 public:
  GaussianEffect(const MeasurementAxis& axis, const MeasurementSettings& settings, double outcome);

  const MeasurementAxis& axis() const { return axis_; }
  double outcome() const { return outcome_; }
  double precision() const { return precision_; }

  double log_weight_plus() const { return log_weight_plus_; }
  double log_weight_minus() const { return log_weight_minus_; }
  double weight_plus() const;
  double weight_minus() const;
  double half_log_ratio() const { return half_log_ratio_; }
  /// log sqrt(g+ g-) = -log(2 pi Delta^2)/2 - (sigma^2 + 1) / (2 Delta^2).
  double log_geometric_weight() const;

  /// Pi(sigma) as a Hermitian operator (linear weights; may underflow for huge |sigma|).
  GeneralOperator operator_form() const;

 private:
  MeasurementAxis axis_;
  double outcome_;
  double precision_;
  double log_weight_plus_;
  double log_weight_minus_;
  double half_log_ratio_;
};

GaussianEffect make_effect(const MeasurementAxis& axis, const MeasurementSettings& settings,
                           double outcome);

/// Truncated trapezoid rule on [-half_width, half_width].
struct QuadratureSpec {
  double half_width = 0.0;
  std::size_t nodes = 0;

  /// Range +-(1 + widths * Delta).
  static QuadratureSpec relative(const MeasurementSettings& settings, double widths, std::size_t nodes);
};

/// Max-entry deviation of the quadrature of Pi(sigma) over sigma from the identity.
double completeness_defect(const MeasurementAxis& axis, const MeasurementSettings& settings,
                           const QuadratureSpec& quadrature);

/// Outcome law p(sigma) = p+ g(sigma - 1) + p- g(sigma + 1).
struct OutcomeDistribution {
  double weight_plus_branch = 0.5;
  double weight_minus_branch = 0.5;
  double precision = 1.0;

  double density(double outcome) const;
  double cdf(double outcome) const;
  double mean() const { return weight_plus_branch - weight_minus_branch; }
  double variance() const;
};

OutcomeDistribution outcome_distribution(const DensityMatrix& state, const MeasurementAxis& axis,
                                         const MeasurementSettings& settings);

/// tr[Pi(sigma) rho].
double outcome_density(const DensityMatrix& state, const MeasurementAxis& axis,
                       const MeasurementSettings& settings, double outcome);

/// Exact mixture sampling: branch +-1 with probability p+-, then Normal(+-1, Delta^2).
double sample_outcome(const DensityMatrix& state, const MeasurementAxis& axis,
                      const MeasurementSettings& settings, RandomStream& rng);

/// Pi^{1/2} rho Pi^{1/2} / tr[Pi rho], evaluated in the effect's eigenbasis.
/// Throws DegenerateUpdate if the normalization vanishes in double precision.
DensityMatrix posterior_update(const DensityMatrix& state, const GaussianEffect& effect);

/// Pi(sigma) / tr Pi(sigma): Bloch vector n tanh(sigma / Delta^2).
DensityMatrix single_estimate(const GaussianEffect& effect);

enum class PurificationStrategy { random_eigenstate, dominant_eigenstate };

/// Picks a pure eigenstate of a mixed estimate.
///
/// random_eigenstate returns P+ with probability lambda+, else P-;
/// dominant_eigenstate returns P+. A degenerate (fully mixed) input yields a
/// uniformly random pure state under both strategies.
DensityMatrix purify_estimate(const DensityMatrix& mixed, PurificationStrategy strategy, RandomStream& rng);

/// E[fidelity(purify_estimate(mixed), truth)] over the strategy's own randomness.
///
/// Linear in `mixed` for random_eigenstate, where it reduces to fidelity(mixed, truth).
/// For a degenerate input the uniformly random pure state averages to 1/2.
double expected_purified_fidelity(const DensityMatrix& mixed, PurificationStrategy strategy,
                                  const DensityMatrix& truth);

}  // namespace unsharp

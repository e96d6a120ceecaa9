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

#include "unsharp/gaussian_povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "unsharp/errors.hpp"

namespace unsharp {

MeasurementSettings::MeasurementSettings(double precision) : precision_(precision) {
  if (!(precision > 0.0) || !std::isfinite(precision)) {
    throw InvalidSettings("measurement precision must be finite and positive, got " +
                          std::to_string(precision));
  }
}

std::optional<std::string> MeasurementSettings::continuum_advisory(double threshold) const {
  if (precision_ >= threshold) return std::nullopt;
  return "precision " + std::to_string(precision_) + " is below " + std::to_string(threshold) +
         "; continuum-limit curves are not expected to hold";
}

double gaussian_log_density(double x, double precision) {
  return -0.5 * std::log(2.0 * std::numbers::pi * precision * precision) -
         x * x / (2.0 * precision * precision);
}

GaussianEffect::GaussianEffect(const MeasurementAxis& axis, const MeasurementSettings& settings,
                               double outcome)
    : axis_(axis),
      outcome_(outcome),
      precision_(settings.precision()),
      log_weight_plus_(gaussian_log_density(outcome - 1.0, settings.precision())),
      log_weight_minus_(gaussian_log_density(outcome + 1.0, settings.precision())),
      half_log_ratio_(outcome / settings.variance()) {}

double GaussianEffect::weight_plus() const { return std::exp(log_weight_plus_); }

double GaussianEffect::weight_minus() const { return std::exp(log_weight_minus_); }

double GaussianEffect::log_geometric_weight() const {
  return -0.5 * std::log(2.0 * std::numbers::pi * precision_ * precision_) -
         (outcome_ * outcome_ + 1.0) / (2.0 * precision_ * precision_);
}

GeneralOperator GaussianEffect::operator_form() const {
  const double plus = weight_plus();
  const double minus = weight_minus();
  return GeneralOperator::hermitian(0.5 * (plus + minus), 0.5 * (plus - minus) * axis_.direction());
}

GaussianEffect make_effect(const MeasurementAxis& axis, const MeasurementSettings& settings,
                           double outcome) {
  return GaussianEffect(axis, settings, outcome);
}

QuadratureSpec QuadratureSpec::relative(const MeasurementSettings& settings, double widths,
                                        std::size_t nodes) {
  return {1.0 + widths * settings.precision(), nodes};
}

double completeness_defect(const MeasurementAxis& axis, const MeasurementSettings& settings,
                           const QuadratureSpec& quadrature) {
  if (quadrature.nodes < 2 || !(quadrature.half_width > 0.0)) {
    throw InvalidSettings("quadrature needs at least two nodes and a positive range");
  }
  const double step = 2.0 * quadrature.half_width / static_cast<double>(quadrature.nodes - 1);
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t k = 0; k < quadrature.nodes; ++k) {
    const double outcome = -quadrature.half_width + step * static_cast<double>(k);
    const double end_weight = (k == 0 || k + 1 == quadrature.nodes) ? 0.5 : 1.0;
    const GaussianEffect effect(axis, settings, outcome);
    plus += end_weight * effect.weight_plus();
    minus += end_weight * effect.weight_minus();
  }
  plus *= step;
  minus *= step;

  const GeneralOperator deviation =
      GeneralOperator::hermitian(0.5 * (plus + minus) - 1.0, 0.5 * (plus - minus) * axis.direction());
  const ComplexMatrix2 m = deviation.matrix();
  double worst = 0.0;
  for (const Complex& entry : m.m) worst = std::max(worst, std::abs(entry));
  return worst;
}

double OutcomeDistribution::density(double outcome) const {
  return weight_plus_branch * std::exp(gaussian_log_density(outcome - 1.0, precision)) +
         weight_minus_branch * std::exp(gaussian_log_density(outcome + 1.0, precision));
}

double OutcomeDistribution::cdf(double outcome) const {
  const auto phi = [&](double x) { return 0.5 * std::erfc(-x / (precision * std::numbers::sqrt2)); };
  return weight_plus_branch * phi(outcome - 1.0) + weight_minus_branch * phi(outcome + 1.0);
}

double OutcomeDistribution::variance() const {
  const double m = mean();
  return precision * precision + 1.0 - m * m;
}

OutcomeDistribution outcome_distribution(const DensityMatrix& state, const MeasurementAxis& axis,
                                         const MeasurementSettings& settings) {
  const double projection = std::clamp(dot(axis.direction(), state.bloch()), -1.0, 1.0);
  return {0.5 * (1.0 + projection), 0.5 * (1.0 - projection), settings.precision()};
}

double outcome_density(const DensityMatrix& state, const MeasurementAxis& axis,
                       const MeasurementSettings& settings, double outcome) {
  return outcome_distribution(state, axis, settings).density(outcome);
}

double sample_outcome(const DensityMatrix& state, const MeasurementAxis& axis,
                      const MeasurementSettings& settings, RandomStream& rng) {
  const OutcomeDistribution law = outcome_distribution(state, axis, settings);
  const double branch = rng.uniform() < law.weight_plus_branch ? 1.0 : -1.0;
  return branch + settings.precision() * rng.normal();
}

DensityMatrix posterior_update(const DensityMatrix& state, const GaussianEffect& effect) {
  const Vec3& axis = effect.axis().direction();
  const Vec3& r = state.bloch();
  const double along = std::clamp(dot(axis, r), -1.0, 1.0);
  const Vec3 across = r - along * axis;
  const double p_plus = 0.5 * (1.0 + along);
  const double p_minus = 0.5 * (1.0 - along);

  // Factor out the larger of exp(+-d) so nothing overflows.
  const double d = effect.half_log_ratio();
  const double suppressed = std::exp(-2.0 * std::abs(d));
  double numerator;
  double denominator;
  if (d >= 0.0) {
    numerator = p_plus - p_minus * suppressed;
    denominator = p_plus + p_minus * suppressed;
  } else {
    numerator = p_plus * suppressed - p_minus;
    denominator = p_minus + p_plus * suppressed;
  }
  if (!(denominator > 0.0) || !std::isfinite(denominator)) {
    throw DegenerateUpdate("posterior normalization vanished for outcome " +
                           std::to_string(effect.outcome()));
  }
  const double coherence = std::exp(-std::abs(d)) / denominator;
  return DensityMatrix::from_bloch((numerator / denominator) * axis + coherence * across,
                                   OutOfBall::project);
}

DensityMatrix single_estimate(const GaussianEffect& effect) {
  return DensityMatrix::from_bloch(std::tanh(effect.half_log_ratio()) * effect.axis().direction(),
                                   OutOfBall::project);
}

DensityMatrix purify_estimate(const DensityMatrix& mixed, PurificationStrategy strategy,
                              RandomStream& rng) {
  const SpectralDecomposition spectrum = spectral_decompose(mixed);
  if (spectrum.degenerate) return random_pure_state(rng);
  if (strategy == PurificationStrategy::dominant_eigenstate) return spectrum.projector_plus;
  return rng.uniform() < spectrum.eigenvalue_plus ? spectrum.projector_plus : spectrum.projector_minus;
}

double expected_purified_fidelity(const DensityMatrix& mixed, PurificationStrategy strategy,
                                  const DensityMatrix& truth) {
  if (strategy == PurificationStrategy::random_eigenstate) return fidelity(mixed, truth);
  const SpectralDecomposition spectrum = spectral_decompose(mixed);
  if (spectrum.degenerate) return 0.5;
  return fidelity(spectrum.projector_plus, truth);
}

}  // namespace unsharp

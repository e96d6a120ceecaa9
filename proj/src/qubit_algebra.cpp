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

#include "unsharp/qubit_algebra.hpp"

#include <cmath>

#include "unsharp/errors.hpp"

namespace unsharp {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

double norm(const Vec3& a) { return std::hypot(a.x, a.y, a.z); }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

ComplexMatrix2 ComplexMatrix2::identity() { return {{1.0, 0.0, 0.0, 1.0}}; }

ComplexMatrix2 ComplexMatrix2::pauli(std::size_t index) {
  switch (index) {
    case 0:
      return {{0.0, 1.0, 1.0, 0.0}};
    case 1:
      return {{0.0, -kI, kI, 0.0}};
    case 2:
      return {{1.0, 0.0, 0.0, -1.0}};
    default:
      throw InvalidInput("Pauli index must be 0, 1 or 2");
  }
}

ComplexMatrix2 ComplexMatrix2::adjoint() const {
  return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

ComplexMatrix2 operator+(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix2 out;
  for (std::size_t k = 0; k < 4; ++k) out.m[k] = a.m[k] + b.m[k];
  return out;
}

ComplexMatrix2 operator-(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix2 out;
  for (std::size_t k = 0; k < 4; ++k) out.m[k] = a.m[k] - b.m[k];
  return out;
}

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix2 out;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      out(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    }
  }
  return out;
}

ComplexMatrix2 operator*(Complex s, const ComplexMatrix2& a) {
  ComplexMatrix2 out;
  for (std::size_t k = 0; k < 4; ++k) out.m[k] = s * a.m[k];
  return out;
}

DensityMatrix DensityMatrix::from_bloch(const Vec3& bloch, OutOfBall policy) {
  if (!std::isfinite(bloch.x) || !std::isfinite(bloch.y) || !std::isfinite(bloch.z)) {
    throw InvalidState("Bloch vector has non-finite components");
  }
  const double length = norm(bloch);
  if (length <= 1.0) return DensityMatrix(bloch);
  if (policy == OutOfBall::reject && length > 1.0 + kBlochSlack) {
    throw InvalidState("Bloch vector length " + std::to_string(length) + " exceeds 1");
  }
  return DensityMatrix(bloch / length);
}

DensityMatrix DensityMatrix::pure(const Vec3& direction) {
  const double length = norm(direction);
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidState("pure state needs a nonzero finite direction");
  }
  return DensityMatrix(direction / length);
}

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix2& rho, OutOfBall policy) {
  const double trace = rho.trace().real();
  if (!(trace > 0.0)) throw InvalidState("matrix trace is not positive");
  Vec3 bloch;
  for (std::size_t i = 0; i < 3; ++i) {
    bloch[i] = (ComplexMatrix2::pauli(i) * rho).trace().real() / trace;
  }
  return from_bloch(bloch, policy);
}

ComplexMatrix2 DensityMatrix::matrix() const {
  return GeneralOperator::hermitian(0.5, 0.5 * bloch_).matrix();
}

GeneralOperator GeneralOperator::hermitian(double identity_part, const Vec3& pauli_part) {
  return {identity_part, {pauli_part.x, pauli_part.y, pauli_part.z}};
}

GeneralOperator GeneralOperator::from_matrix(const ComplexMatrix2& matrix) {
  std::array<Complex, 3> pauli_part;
  for (std::size_t i = 0; i < 3; ++i) {
    pauli_part[i] = 0.5 * (ComplexMatrix2::pauli(i) * matrix).trace();
  }
  return {0.5 * matrix.trace(), pauli_part};
}

GeneralOperator GeneralOperator::adjoint() const {
  return {std::conj(identity_part_),
          {std::conj(pauli_part_[0]), std::conj(pauli_part_[1]), std::conj(pauli_part_[2])}};
}

bool GeneralOperator::is_hermitian(double tolerance) const {
  if (std::abs(identity_part_.imag()) > tolerance) return false;
  for (const Complex& c : pauli_part_) {
    if (std::abs(c.imag()) > tolerance) return false;
  }
  return true;
}

ComplexMatrix2 GeneralOperator::matrix() const {
  const auto& c = pauli_part_;
  return {{identity_part_ + c[2], c[0] - kI * c[1], c[0] + kI * c[1], identity_part_ - c[2]}};
}

Vec3 GeneralOperator::real_pauli_part() const {
  return {pauli_part_[0].real(), pauli_part_[1].real(), pauli_part_[2].real()};
}

// (a0 + a.s)(b0 + b.s) = a0 b0 + a.b + (a0 b + b0 a + i a x b).s
GeneralOperator operator*(const GeneralOperator& a, const GeneralOperator& b) {
  const auto& av = a.pauli_part_;
  const auto& bv = b.pauli_part_;
  const Complex a0 = a.identity_part_;
  const Complex b0 = b.identity_part_;
  const Complex inner = av[0] * bv[0] + av[1] * bv[1] + av[2] * bv[2];
  std::array<Complex, 3> out;
  out[0] = a0 * bv[0] + b0 * av[0] + kI * (av[1] * bv[2] - av[2] * bv[1]);
  out[1] = a0 * bv[1] + b0 * av[1] + kI * (av[2] * bv[0] - av[0] * bv[2]);
  out[2] = a0 * bv[2] + b0 * av[2] + kI * (av[0] * bv[1] - av[1] * bv[0]);
  return {a0 * b0 + inner, out};
}

GeneralOperator operator*(Complex s, const GeneralOperator& a) {
  const auto& v = a.pauli_part_;
  return {s * a.identity_part_, {s * v[0], s * v[1], s * v[2]}};
}

MeasurementAxis MeasurementAxis::from_direction(const Vec3& direction) {
  const double length = norm(direction);
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidInput("measurement axis needs a nonzero finite direction");
  }
  return MeasurementAxis(direction / length);
}

double purity(const DensityMatrix& state) { return 0.5 * (1.0 + norm_squared(state.bloch())); }

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  return 0.5 * (1.0 + dot(a.bloch(), b.bloch()));
}

SpectralDecomposition spectral_decompose(const DensityMatrix& state) {
  const double length = state.bloch_norm();
  SpectralDecomposition out;
  if (length == 0.0) {
    out.degenerate = true;
    out.projector_plus = DensityMatrix::pure({0.0, 0.0, 1.0});
    out.projector_minus = DensityMatrix::pure({0.0, 0.0, -1.0});
    return out;
  }
  const Vec3 direction = state.bloch() / length;
  out.eigenvalue_plus = 0.5 * (1.0 + length);
  out.eigenvalue_minus = 0.5 * (1.0 - length);
  out.projector_plus = DensityMatrix::pure(direction);
  out.projector_minus = DensityMatrix::pure(-direction);
  return out;
}

Vec3 random_unit_vector(RandomStream& rng) {
  for (;;) {
    const Vec3 v{rng.normal(), rng.normal(), rng.normal()};
    const double length = norm(v);
    if (length > 0.0) return v / length;
  }
}

DensityMatrix random_pure_state(RandomStream& rng) {
  return DensityMatrix::pure(random_unit_vector(rng));
}

MeasurementAxis random_axis(RandomStream& rng) {
  return MeasurementAxis::from_direction(random_unit_vector(rng));
}

}  // namespace unsharp

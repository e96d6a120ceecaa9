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

#include <array>
#include <complex>
#include <cstddef>

#include "unsharp/random_stream.hpp"

namespace unsharp {

using Complex = std::complex<double>;

/// Numerical slack allowed on |r| > 1 before a Bloch vector is considered outside the ball.
inline constexpr double kBlochSlack = 1e-12;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend Vec3 operator*(const Vec3& a, double s) { return s * a; }
  friend Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm_squared(const Vec3& a) { return dot(a, a); }
double norm(const Vec3& a);
Vec3 cross(const Vec3& a, const Vec3& b);

/// Dense 2x2 complex matrix, row-major. Used by the matrix form of the
/// conditional master equation and by conversions.
struct ComplexMatrix2 {
  std::array<Complex, 4> m{};

  Complex operator()(std::size_t row, std::size_t col) const { return m[2 * row + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return m[2 * row + col]; }

  static ComplexMatrix2 identity();
  /// Pauli matrix sigma_{x,y,z} for index 0, 1, 2.
  static ComplexMatrix2 pauli(std::size_t index);

  Complex trace() const { return m[0] + m[3]; }
  ComplexMatrix2 adjoint() const;

  friend ComplexMatrix2 operator+(const ComplexMatrix2& a, const ComplexMatrix2& b);
  friend ComplexMatrix2 operator-(const ComplexMatrix2& a, const ComplexMatrix2& b);
  friend ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b);
  friend ComplexMatrix2 operator*(Complex s, const ComplexMatrix2& a);
};

/// What a constructor does with a Bloch vector longer than 1 + kBlochSlack.
enum class OutOfBall { reject, project };

/// Qubit state rho = (1 + r.sigma) / 2, stored as its Bloch vector r = <sigma>.
///
/// Unit trace is structural. Construction enforces |r| <= 1 + kBlochSlack
/// (or projects onto the sphere, depending on the policy).
class DensityMatrix {
 public:
  /// The fully mixed state 1/2.
  DensityMatrix() = default;

  static DensityMatrix fully_mixed() { return {}; }
  static DensityMatrix from_bloch(const Vec3& bloch, OutOfBall policy = OutOfBall::reject);
  /// Pure state along `direction`, normalized here. Throws InvalidState for a zero vector.
  static DensityMatrix pure(const Vec3& direction);
  /// Reads the Bloch vector off a Hermitian matrix after dividing by its trace.
  static DensityMatrix from_matrix(const ComplexMatrix2& rho, OutOfBall policy = OutOfBall::project);

  const Vec3& bloch() const { return bloch_; }
  double bloch_norm() const { return norm(bloch_); }
  ComplexMatrix2 matrix() const;

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  explicit DensityMatrix(const Vec3& bloch) : bloch_(bloch) {}

  Vec3 bloch_{};
};

/// c0 * 1 + c . sigma with complex coefficients; carries non-Hermitian Kraus products.
class GeneralOperator {
 public:
  GeneralOperator() = default;
  GeneralOperator(Complex identity_part, const std::array<Complex, 3>& pauli_part)
      : identity_part_(identity_part), pauli_part_(pauli_part) {}

  static GeneralOperator identity() { return {1.0, {}}; }
  static GeneralOperator hermitian(double identity_part, const Vec3& pauli_part);
  static GeneralOperator from_matrix(const ComplexMatrix2& matrix);

  Complex identity_part() const { return identity_part_; }
  const std::array<Complex, 3>& pauli_part() const { return pauli_part_; }

  GeneralOperator adjoint() const;
  Complex trace() const { return 2.0 * identity_part_; }
  bool is_hermitian(double tolerance = 0.0) const;
  ComplexMatrix2 matrix() const;

  /// Real parts of the Pauli coefficients; meaningful for Hermitian operators.
  Vec3 real_pauli_part() const;

  friend GeneralOperator operator*(const GeneralOperator& a, const GeneralOperator& b);
  friend GeneralOperator operator*(Complex s, const GeneralOperator& a);

 private:
  Complex identity_part_{};
  std::array<Complex, 3> pauli_part_{};
};

/// Unit direction n of the polarization observable n.sigma.
class MeasurementAxis {
 public:
  /// Normalizes `direction`; throws InvalidInput for a zero or non-finite vector.
  static MeasurementAxis from_direction(const Vec3& direction);
  static MeasurementAxis x() { return MeasurementAxis({1.0, 0.0, 0.0}); }
  static MeasurementAxis y() { return MeasurementAxis({0.0, 1.0, 0.0}); }
  static MeasurementAxis z() { return MeasurementAxis({0.0, 0.0, 1.0}); }

  const Vec3& direction() const { return direction_; }

  friend bool operator==(const MeasurementAxis&, const MeasurementAxis&) = default;

 private:
  explicit MeasurementAxis(const Vec3& direction) : direction_(direction) {}

  Vec3 direction_;
};

struct SpectralDecomposition {
  double eigenvalue_plus = 0.5;
  double eigenvalue_minus = 0.5;
  DensityMatrix projector_plus;
  DensityMatrix projector_minus;
  /// Set when r = 0. The projectors are then +z / -z.
  bool degenerate = false;
};

/// tr[rho^2] = (1 + |r|^2) / 2.
double purity(const DensityMatrix& state);

/// Bilinear overlap tr[a b] = (1 + r_a . r_b) / 2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Eigenvalues (1 +- |r|)/2 with projectors along +-r/|r|.
SpectralDecomposition spectral_decompose(const DensityMatrix& state);

/// Direction of a normalized 3-component standard-normal draw.
Vec3 random_unit_vector(RandomStream& rng);
DensityMatrix random_pure_state(RandomStream& rng);
MeasurementAxis random_axis(RandomStream& rng);

}  // namespace unsharp

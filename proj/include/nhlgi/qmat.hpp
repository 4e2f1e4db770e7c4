// Copyright 2026 The nhlgi Authors
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

// Fixed-size complex linear algebra for qubit (2x2) and qubit+ancilla (4x4)
// operators.
//
// Representation conventions used everywhere in the library:
//   |up_z> = (1, 0)^T, |down_z> = (0, 1)^T
//   sigma_y = [[0, -i], [i, 0]]
//   two-qubit operators are ordered ancilla (x) system.

#ifndef NHLGI_QMAT_HPP
#define NHLGI_QMAT_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "nhlgi/error.hpp"

namespace nhlgi {

using cplx = std::complex<double>;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;
using CVec2 = Eigen::Vector2cd;
using CVec4 = Eigen::Vector4cd;
using Vec3 = Eigen::Vector3d;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

enum class Axis { kX, kY, kZ };

CMat2 pauli(Axis axis);

/// v . sigma for a complex 3-vector given as real and imaginary parts.
CMat2 sigma_dot(const Vec3& re, const Vec3& im = Vec3::Zero());

/// Kronecker product a (x) b.
CMat4 kron(const CMat2& a, const CMat2& b);

/// Operator-norm-compatible size measure (Frobenius norm).
template <typename Derived>
double frobenius(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!std::isfinite(std::real(m(i, j))) ||
          !std::isfinite(std::imag(m(i, j))))
        return false;
  return true;
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).norm();
}

/// exp(M) for a fixed-size square matrix by scaling and squaring around a
/// truncated Taylor series. Used as the general-purpose fallback.
template <typename Mat>
Mat expm_taylor(const Mat& m) {
  const double norm = m.template lpNorm<1>();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Mat scaled = m / std::ldexp(1.0, squarings);
  // ||scaled|| <= 1/2, so 20 terms reach the unit roundoff.
  Mat result = Mat::Identity();
  Mat term = Mat::Identity();
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

/// exp(-i M t). Uses cos(sqrt(c) t) I - i sin(sqrt(c) t)/sqrt(c) M whenever
/// M^2 = c I (every traceless 2x2 matrix, in particular every H = (A - iB).sigma),
/// otherwise falls back to scaling and squaring.
CMat2 exp_2x2(const CMat2& m, double t);

/// exp(-i M t) for Hermitian M via its real spectral decomposition.
/// Throws kNonHermitian if ||M - M^dagger|| > 1e-10.
CMat4 exp_hermitian_4x4(const CMat4& m, double t);

/// 1/2 Tr|rho1 - rho2| for unit-trace Hermitian 2x2 matrices.
double trace_distance(const CMat2& rho1, const CMat2& rho2);

}  // namespace nhlgi

#endif  // NHLGI_QMAT_HPP

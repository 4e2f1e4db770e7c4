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

#include "nhlgi/qmat.hpp"

#include <Eigen/Eigenvalues>

namespace nhlgi {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kNonFinite: return "non-finite input";
    case ErrorCode::kNonHermitian: return "non-Hermitian operator";
    case ErrorCode::kDegenerateEvolution: return "degenerate evolution";
    case ErrorCode::kStiffness: return "stiffness";
    case ErrorCode::kPostSelectionStarvation: return "post-selection starvation";
    case ErrorCode::kDomain: return "parameter out of domain";
    case ErrorCode::kConfig: return "configuration error";
    case ErrorCode::kIo: return "I/O error";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

CMat2 pauli(Axis axis) {
  CMat2 m;
  switch (axis) {
    case Axis::kX: m << 0.0, 1.0, 1.0, 0.0; break;
    case Axis::kY: m << 0.0, -kI, kI, 0.0; break;
    case Axis::kZ: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

CMat2 sigma_dot(const Vec3& re, const Vec3& im) {
  const cplx x{re.x(), im.x()}, y{re.y(), im.y()}, z{re.z(), im.z()};
  CMat2 m;
  m << z, x - kI * y, x + kI * y, -z;
  return m;
}

CMat4 kron(const CMat2& a, const CMat2& b) {
  CMat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

namespace {

// sin(x)/x with the analytic limit.
cplx sinc(cplx x) {
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

CMat2 exp_2x2(const CMat2& m, double t) {
  if (!all_finite(m) || !std::isfinite(t))
    fail(ErrorCode::kNonFinite, "exp_2x2: non-finite input");
  const CMat2 sq = m * m;
  const cplx c = 0.5 * (sq(0, 0) + sq(1, 1));
  // Rounding in M^2 is relative to |M|^2, not to |M^2|.
  const double mag = m.cwiseAbs().maxCoeff();
  const double defect = (sq - c * CMat2::Identity()).cwiseAbs().maxCoeff();
  if (defect <= 1e-13 * mag * mag || mag == 0.0) {
    const cplx root = std::sqrt(c);
    const cplx phase = root * t;
    return std::cos(phase) * CMat2::Identity() - kI * t * sinc(phase) * m;
  }
  return expm_taylor<CMat2>(-kI * t * m);
}

CMat4 exp_hermitian_4x4(const CMat4& m, double t) {
  if (!all_finite(m) || !std::isfinite(t))
    fail(ErrorCode::kNonFinite, "exp_hermitian_4x4: non-finite input");
  if (hermiticity_defect(m) > 1e-10)
    fail(ErrorCode::kNonHermitian,
         "exp_hermitian_4x4: operator is not Hermitian (embedding construction bug)");
  const CMat4 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat4> eig(herm);
  if (eig.info() != Eigen::Success)
    fail(ErrorCode::kInternal, "exp_hermitian_4x4: eigensolver failed");
  Eigen::Vector4cd phases;
  for (int k = 0; k < 4; ++k) phases(k) = std::exp(-kI * eig.eigenvalues()(k) * t);
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

double trace_distance(const CMat2& rho1, const CMat2& rho2) {
  if (!all_finite(rho1) || !all_finite(rho2))
    fail(ErrorCode::kNonFinite, "trace_distance: non-finite input");
  for (const CMat2* rho : {&rho1, &rho2}) {
    if (hermiticity_defect(*rho) > 1e-10)
      fail(ErrorCode::kNonHermitian, "trace_distance: input is not Hermitian");
    if (std::abs(rho->trace() - 1.0) > 1e-10)
      fail(ErrorCode::kInvalidArgument, "trace_distance: input does not have unit trace");
  }
  const CMat2 d = rho1 - rho2;
  // Eigenvalues of a Hermitian 2x2: mean +- sqrt(((a-d)/2)^2 + |b|^2).
  const double mean = 0.5 * std::real(d(0, 0) + d(1, 1));
  const double half_diff = 0.5 * std::real(d(0, 0) - d(1, 1));
  const double radius = std::hypot(half_diff, std::abs(d(0, 1)));
  return 0.5 * (std::abs(mean + radius) + std::abs(mean - radius));
}

}  // namespace nhlgi

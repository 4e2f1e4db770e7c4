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

#include "nhlgi/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace nhlgi {

namespace {

bool finite3(const Vec3& v) { return v.allFinite(); }

Vec3 any_perpendicular(const Vec3& u) {
  const Vec3 trial = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return (trial - trial.dot(u) * u).normalized();
}

void check_time(double t, const char* where) {
  if (!std::isfinite(t)) fail(ErrorCode::kNonFinite, std::string(where) + ": non-finite time");
}

void check_kappa(double kappa, const char* where) {
  if (!std::isfinite(kappa) || kappa < 0)
    fail(ErrorCode::kInvalidArgument, std::string(where) + ": kappa must be finite and >= 0");
}

// Pauli components: S_k = tr(rho sigma_k)/2 for rho = I/2 + S.sigma.
Vec3 bloch_of(const CMat2& rho) {
  return {std::real(rho(0, 1)), -std::imag(rho(0, 1)),
          0.5 * std::real(rho(0, 0) - rho(1, 1))};
}

CMat2 rho_of(const Vec3& s) {
  return 0.5 * CMat2::Identity() + sigma_dot(s);
}

}  // namespace

// NHHamiltonian -------------------------------------------------------------

NHHamiltonian::NHHamiltonian(const Vec3& a, const Vec3& b, double scale)
    : a_(a), b_(b), scale_(scale) {
  if (!finite3(a) || !finite3(b) || !std::isfinite(scale))
    fail(ErrorCode::kNonFinite, "NHHamiltonian: non-finite input");
  if (scale <= 0) fail(ErrorCode::kInvalidArgument, "NHHamiltonian: scale must be > 0");
  const double na = a.norm(), nb = b.norm();
  if (std::abs(a.dot(b)) > 1e-12 * na * nb)
    fail(ErrorCode::kDomain, "NHHamiltonian: A and B must be orthogonal");
  if (!(na > nb))
    fail(ErrorCode::kDomain,
         "NHHamiltonian: |A| must exceed |B| (real spectrum required)");
  omega_ = scale * std::sqrt((na - nb) * (na + nb));
  b_axis_ = nb > 0 ? Vec3(b / nb) : any_perpendicular(a / na);
}

NHHamiltonian::NHHamiltonian(const Vec3& a, const Vec3& b, double scale,
                             double omega, const Vec3& b_axis)
    : a_(a), b_(b), scale_(scale), omega_(omega), b_axis_(b_axis) {}

NHHamiltonian NHHamiltonian::canonical(double theta, double scale) {
  if (!std::isfinite(theta) || theta < 0 || theta > kThetaMax)
    fail(ErrorCode::kDomain, "canonical Hamiltonian: theta must lie in [0, pi/2 - 1e-6]");
  return canonical_from_delta(kPi / 2 - theta, scale);
}

NHHamiltonian NHHamiltonian::canonical_from_delta(double delta, double scale) {
  if (!std::isfinite(delta) || delta < kPi / 2 - kThetaMax || delta > kPi / 2)
    fail(ErrorCode::kDomain, "canonical Hamiltonian: delta must lie in [1e-6, pi/2]");
  if (!std::isfinite(scale) || scale <= 0)
    fail(ErrorCode::kInvalidArgument, "canonical Hamiltonian: scale must be > 0");
  // sec(theta) = 1/sin(delta), tan(theta) = cos(delta)/sin(delta).
  const double sec = 1.0 / std::sin(delta);
  const double tan = std::cos(delta) / std::sin(delta);
  // sec^2 - tan^2 = 1 exactly; store it rather than recomputing with
  // cancellation.
  return NHHamiltonian(Vec3(sec, 0, 0), Vec3(0, 0, -tan), scale, scale,
                       Vec3(0, 0, -1));
}

CMat2 NHHamiltonian::matrix() const {
  return scale_ * sigma_dot(a_, -b_);
}

CMat2 NHHamiltonian::propagator(double t) const {
  check_time(t, "propagator");
  const double phase = omega_ * t;
  return std::cos(phase) * CMat2::Identity() -
         kI * (std::sin(phase) / omega_) * matrix();
}

Frame NHHamiltonian::frame() const {
  Frame f;
  f.a_hat = a_.normalized();
  f.b_hat = b_axis_;
  f.n_hat = f.a_hat.cross(f.b_hat);
  return f;
}

// States ----------------------------------------------------------------------

PureState::PureState(const CVec2& amplitudes) : amp_(amplitudes) {
  if (!all_finite(amplitudes)) fail(ErrorCode::kNonFinite, "PureState: non-finite amplitudes");
  if (std::abs(amplitudes.norm() - 1.0) > 1e-12)
    fail(ErrorCode::kInvalidArgument, "PureState: amplitudes must have unit norm");
}

PureState PureState::normalized(const CVec2& v) {
  if (!all_finite(v)) fail(ErrorCode::kNonFinite, "PureState: non-finite amplitudes");
  const double n = v.norm();
  if (n < 1e-300) fail(ErrorCode::kInvalidArgument, "PureState: zero vector");
  return PureState(v / n);
}

PureState PureState::up_z() { return PureState(CVec2(1.0, 0.0)); }
PureState PureState::down_z() { return PureState(CVec2(0.0, 1.0)); }

PureState PureState::up_y() {
  return PureState(CVec2(kI, 1.0) / std::sqrt(2.0));
}

PureState PureState::down_y() {
  return PureState(CVec2(-kI, 1.0) / std::sqrt(2.0));
}

PureState PureState::from_angles(double polar, double azimuth) {
  if (!std::isfinite(polar) || !std::isfinite(azimuth))
    fail(ErrorCode::kNonFinite, "PureState::from_angles: non-finite angle");
  return PureState::normalized(
      CVec2(std::cos(polar / 2), std::exp(kI * azimuth) * std::sin(polar / 2)));
}

Vec3 PureState::bloch() const {
  return bloch_of(amp_ * amp_.adjoint());
}

DensityMatrix::DensityMatrix(const CMat2& m) : m_(m) {
  if (!all_finite(m)) fail(ErrorCode::kNonFinite, "DensityMatrix: non-finite entries");
  if (hermiticity_defect(m) > 1e-10)
    fail(ErrorCode::kNonHermitian, "DensityMatrix: matrix is not Hermitian");
  if (std::abs(m.trace() - 1.0) > 1e-10)
    fail(ErrorCode::kInvalidArgument, "DensityMatrix: trace must be 1");
  const Vec3 s = bloch_of(m);
  if (0.5 - s.norm() < -1e-10)
    fail(ErrorCode::kInvalidArgument, "DensityMatrix: matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  CMat2 m = psi.amplitudes() * psi.amplitudes().adjoint();
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_bloch(const Vec3& s) {
  if (!finite3(s)) fail(ErrorCode::kNonFinite, "DensityMatrix: non-finite Bloch vector");
  if (s.norm() > 0.5 + 1e-8)
    fail(ErrorCode::kInvalidArgument, "DensityMatrix: Bloch vector longer than 1/2");
  Vec3 clipped = s;
  if (s.norm() > 0.5) clipped *= 0.5 / s.norm();
  return DensityMatrix(rho_of(clipped));
}

Vec3 DensityMatrix::bloch() const { return bloch_of(m_); }

double DensityMatrix::purity() const { return 0.5 + 2.0 * bloch().squaredNorm(); }

// Propagation ---------------------------------------------------------------

double normalization(const NHHamiltonian& h, const PureState& psi0, double t) {
  const double n = (h.propagator(t) * psi0.amplitudes()).norm();
  if (n < 1e-14)
    fail(ErrorCode::kDegenerateEvolution, "normalization: propagated norm vanished");
  return 1.0 / n;
}

PureState evolve_pure(const NHHamiltonian& h, const PureState& psi0, double t) {
  const CVec2 v = h.propagator(t) * psi0.amplitudes();
  const double n = v.norm();
  if (n < 1e-14)
    fail(ErrorCode::kDegenerateEvolution, "evolve_pure: propagated norm vanished");
  return PureState(v / n);
}

namespace {

CMat2 propagate_matrix(const NHHamiltonian& h, const CMat2& rho, double t) {
  const CMat2 u = h.propagator(t);
  CMat2 out = u * rho * u.adjoint();
  const double tr = std::real(out.trace());
  if (!(tr > 1e-14))
    fail(ErrorCode::kDegenerateEvolution, "evolve_density: propagated trace vanished");
  out /= tr;
  return 0.5 * (out + out.adjoint());
}

}  // namespace

DensityMatrix evolve_density(const NHHamiltonian& h, const DensityMatrix& rho0,
                             double t) {
  if (t == 0) return rho0;
  return DensityMatrix(propagate_matrix(h, rho0.matrix(), t));
}

Vec3 bloch_rhs(const Vec3& s, const NHHamiltonian& h, double kappa) {
  const Vec3 a = h.effective_a();
  const Vec3 b = h.effective_b();
  return 2.0 * a.cross(s) - b + 4.0 * b.dot(s) * s - 2.0 * kappa * s;
}

ode::Options default_ode_options() {
  ode::Options opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-12;
  return opt;
}

Trajectory integrate_bloch(const Vec3& s0, const NHHamiltonian& h, double kappa,
                           std::span<const double> t_grid,
                           const ode::Options& options) {
  check_kappa(kappa, "integrate_bloch");
  if (!finite3(s0)) fail(ErrorCode::kNonFinite, "integrate_bloch: non-finite initial state");
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0 ||
        (i > 0 && !(t_grid[i] > t_grid[i - 1])))
      fail(ErrorCode::kInvalidArgument,
           "integrate_bloch: time grid must be strictly increasing from t >= 0");

  Trajectory traj;
  traj.times.assign(t_grid.begin(), t_grid.end());
  traj.states.resize(t_grid.size());
  traj.kappa = kappa;
  traj.rtol = options.rtol;
  traj.atol = options.atol;
  traj.integrator = "dormand-prince-5(4)";

  const Vec3 a = h.effective_a();
  const Vec3 b = h.effective_b();
  auto rhs = [&](double, const ode::State<3>& y) {
    const Vec3 s(y[0], y[1], y[2]);
    const Vec3 d = 2.0 * a.cross(s) - b + 4.0 * b.dot(s) * s - 2.0 * kappa * s;
    return ode::State<3>{d.x(), d.y(), d.z()};
  };
  const ode::Stats stats = ode::integrate<3>(
      rhs, 0.0, ode::State<3>{s0.x(), s0.y(), s0.z()}, t_grid,
      [&](std::size_t i, const ode::State<3>& y) {
        traj.states[i] = Vec3(y[0], y[1], y[2]);
      },
      options);
  traj.steps = stats.accepted;
  return traj;
}

namespace {

using Real = long double;
using Mat3L = std::array<std::array<Real, 3>, 3>;

Mat3L mul3(const Mat3L& x, const Mat3L& y) {
  Mat3L z{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) z[i][j] += x[i][k] * y[k][j];
  return z;
}

// exp(m t) by scaling and squaring with a 14-term Taylor core.
Mat3L expm3(const Mat3L& m, Real t) {
  Real norm = 0;
  for (const auto& row : m)
    norm = std::max(norm, std::abs(row[0] * t) + std::abs(row[1] * t) + std::abs(row[2] * t));
  int squarings = 0;
  while (norm > 0.25L) {
    norm /= 2;
    ++squarings;
  }
  const Real tau = std::ldexp(t, -squarings);
  Mat3L a{}, term{}, sum{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = m[i][j] * tau;
    term[i][i] = sum[i][i] = 1;
  }
  for (int k = 1; k <= 14; ++k) {
    term = mul3(term, a);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        term[i][j] /= k;
        sum[i][j] += term[i][j];
      }
  }
  for (int k = 0; k < squarings; ++k) sum = mul3(sum, sum);
  return sum;
}

std::array<Real, 3> apply3(const Mat3L& m, const std::array<Real, 3>& v) {
  std::array<Real, 3> out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
  return out;
}

}  // namespace

Vec3 propagate_bloch(const NHHamiltonian& h, const Vec3& s, double kappa, double t) {
  check_kappa(kappa, "propagate_bloch");
  check_time(t, "propagate_bloch");
  if (t == 0) return s;
  if (kappa == 0) return bloch_of(propagate_matrix(h, rho_of(s), t));
  return propagate_bloch_linear(h, s, kappa, t);
}

// With rho~ = r0 I + r.sigma unnormalized, the noisy equation is linear:
//   r0' = -2 B.r,   r' = 2 A x r - 2 r0 B - 2 kappa r,   S = r / (2 r0).
// In the frame (A_hat, B_hat, n_hat) the A component only decays. The other
// three are propagated exactly. For weak noise the variables
// c = a r0 + b r_n, y = b r0 + a r_n, z = w r_B turn the noiseless part into
// a rotation, which keeps the exponential well conditioned as |A| -> |B|;
// strong noise is better conditioned in the plain frame.
Vec3 propagate_bloch_linear(const NHHamiltonian& h, const Vec3& s, double kappa, double t) {
  check_kappa(kappa, "propagate_bloch");
  check_time(t, "propagate_bloch");
  if (t < 0) fail(ErrorCode::kInvalidArgument, "propagate_bloch: noisy evolution needs t >= 0");
  if (!finite3(s)) fail(ErrorCode::kNonFinite, "propagate_bloch: non-finite state");

  const Frame f = h.frame();
  const Real a = h.effective_a().norm();
  const Real b = h.effective_b().dot(f.b_hat);
  const Real w = h.gap();
  const Real w2 = w * w;
  const Real k = kappa;
  const Real r_a = 2 * Real(s.dot(f.a_hat)) * std::exp(-2 * k * Real(t));
  const Real r_b = 2 * Real(s.dot(f.b_hat));
  const Real r_n = 2 * Real(s.dot(f.n_hat));

  Real r0, out_b, out_n;
  if (k * a < w2) {
    const Mat3L m = {{{2 * k * b * b / w2, -2 * k * a * b / w2, 0},
                      {2 * k * a * b / w2, -2 * k * a * a / w2, 2 * w},
                      {0, -2 * w, -2 * k}}};
    const auto o = apply3(expm3(m, t), {a + b * r_n, b + a * r_n, w * r_b});
    r0 = (a * o[0] - b * o[1]) / w2;
    out_n = (a * o[1] - b * o[0]) / w2;
    out_b = o[2] / w;
  } else {
    const Mat3L m = {{{0, -2 * b, 0}, {-2 * b, -2 * k, -2 * a}, {0, 2 * a, -2 * k}}};
    const auto o = apply3(expm3(m, t), {1, r_b, r_n});
    r0 = o[0];
    out_b = o[1];
    out_n = o[2];
  }
  if (!(r0 > 0) || !std::isfinite(static_cast<double>(r0)))
    fail(ErrorCode::kDegenerateEvolution, "propagate_bloch: trace of the evolved state vanished");
  const Vec3 in_frame(static_cast<double>(r_a / (2 * r0)), static_cast<double>(out_b / (2 * r0)),
                      static_cast<double>(out_n / (2 * r0)));
  return f.to_cartesian(in_frame);
}

DensityMatrix evolve_density_noisy(const NHHamiltonian& h,
                                   const DensityMatrix& rho0, double kappa,
                                   double t, const ode::Options& options) {
  check_kappa(kappa, "evolve_density_noisy");
  check_time(t, "evolve_density_noisy");
  if (t < 0) fail(ErrorCode::kInvalidArgument, "evolve_density_noisy: t must be >= 0");
  if (t == 0) return rho0;
  const CMat2 a_sigma = sigma_dot(h.effective_a());
  const CMat2 b_sigma = sigma_dot(h.effective_b());
  const CMat2 id = CMat2::Identity();

  auto pack = [](const CMat2& m) {
    ode::State<8> y;
    for (int k = 0; k < 4; ++k) {
      y[2 * k] = std::real(m(k / 2, k % 2));
      y[2 * k + 1] = std::imag(m(k / 2, k % 2));
    }
    return y;
  };
  auto unpack = [](const ode::State<8>& y) {
    CMat2 m;
    for (int k = 0; k < 4; ++k) m(k / 2, k % 2) = cplx(y[2 * k], y[2 * k + 1]);
    return m;
  };
  auto rhs = [&](double, const ode::State<8>& y) {
    const CMat2 rho = unpack(y);
    const cplx gain = 2.0 * (rho * b_sigma).trace();
    const CMat2 d = -kI * (a_sigma * rho - rho * a_sigma) -
                    (b_sigma * rho + rho * b_sigma) + gain * rho +
                    kappa * (id - 2.0 * rho);
    return pack(d);
  };
  const CMat2 m = unpack(ode::integrate_to<8>(rhs, 0.0, pack(rho0.matrix()), t, options));
  // The flow preserves trace and Hermiticity; strip integration round-off
  // and pull pure states that drifted just outside the sphere back onto it.
  CMat2 herm = 0.5 * (m + m.adjoint());
  herm /= std::real(herm.trace());
  return DensityMatrix::from_bloch(bloch_of(herm));
}

// Closed forms ----------------------------------------------------------------

BnComponents analytic_SB_Sn(double a_mag, double b_mag, double t) {
  if (!std::isfinite(a_mag) || !std::isfinite(b_mag) || !std::isfinite(t))
    fail(ErrorCode::kNonFinite, "analytic_SB_Sn: non-finite input");
  if (b_mag < 0 || !(a_mag > b_mag))
    fail(ErrorCode::kDomain, "analytic_SB_Sn: requires A > B >= 0");
  const double w = std::sqrt((a_mag - b_mag) * (a_mag + b_mag));
  const double c = std::cos(2 * w * t);
  const double den = a_mag + b_mag * c;
  return {0.5 * w * std::sin(2 * w * t) / den, -0.5 * (b_mag + a_mag * c) / den};
}

double geodesic_distance(const PureState& psi, const PureState& phi) {
  const double overlap = std::abs(psi.overlap(phi));
  // For unit 2-vectors 1 - |<psi|phi>|^2 = |psi_0 phi_1 - psi_1 phi_0|^2.
  const double wedge = std::abs(psi[0] * phi[1] - psi[1] * phi[0]);
  return std::atan2(wedge, overlap);
}

double geodesic_distance_closed_form(double theta, double t) {
  if (!std::isfinite(theta) || theta < 0 || theta > kThetaMax)
    fail(ErrorCode::kDomain, "geodesic_distance_closed_form: theta out of [0, pi/2)");
  const double s = std::sin(theta);
  const double st = std::sin(t);
  const double overlap = std::sqrt(st * st * (1 - s) / (1 + std::cos(2 * t) * s));
  return std::acos(std::min(1.0, overlap));
}

namespace {

// 1 - |<a|b>|^2 for unit vectors, without cancellation.
double fidelity_deficit(const CVec2& a, const CVec2& b) {
  return std::norm(a(0) * b(1) - a(1) * b(0));
}

double symmetric_coefficient(const NHHamiltonian& h, const PureState& psi0,
                             const CVec2& center, double t, double dt) {
  const CVec2 fwd = evolve_pure(h, psi0, t + dt).amplitudes();
  const CVec2 bwd = evolve_pure(h, psi0, t - dt).amplitudes();
  return (fidelity_deficit(center, fwd) + fidelity_deficit(center, bwd)) /
         (2.0 * dt * dt);
}

}  // namespace

double speed(const NHHamiltonian& h, const PureState& psi0, double t) {
  check_time(t, "speed");
  constexpr double kStep = 1e-4;
  const CVec2 center = evolve_pure(h, psi0, t).amplitudes();
  const double coarse = symmetric_coefficient(h, psi0, center, t, kStep);
  const double fine = symmetric_coefficient(h, psi0, center, t, kStep / 2);
  return std::max(0.0, (4.0 * fine - coarse) / 3.0);
}

double speed_closed_form(double theta, double t) {
  if (!std::isfinite(theta) || theta < 0 || theta > kThetaMax)
    fail(ErrorCode::kDomain, "speed_closed_form: theta out of [0, pi/2)");
  const double c = std::cos(theta);
  const double den = 1 + std::cos(2 * t) * std::sin(theta);
  return c * c / (den * den);
}

}  // namespace nhlgi

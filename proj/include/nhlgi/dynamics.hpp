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

// Qubit dynamics under H = (A - iB).sigma with A.B = 0 and |A| > |B|.
//
// A state evolves as rho_t = e^{-iHt} rho_0 e^{iH^dagger t} / tr(...), which
// for the Bloch vector S (rho = I/2 + S.sigma) is the nonlinear equation
//
//   dS/dt = 2 A x S - B + 4 (B.S) S - 2 kappa S
//
// where kappa >= 0 is an optional isotropic energy-noise rate.

#ifndef NHLGI_DYNAMICS_HPP
#define NHLGI_DYNAMICS_HPP

#include <span>
#include <string>
#include <vector>

#include "nhlgi/ode.hpp"
#include "nhlgi/qmat.hpp"

namespace nhlgi {

/// Largest admissible theta for the canonical family; the family and the
/// closed forms built on it are singular at pi/2.
inline constexpr double kThetaMax = kPi / 2 - 1e-6;

/// Orthonormal frame (A_hat, B_hat, n_hat = A_hat x B_hat).
struct Frame {
  Vec3 a_hat;
  Vec3 b_hat;
  Vec3 n_hat;

  Vec3 to_frame(const Vec3& cartesian) const {
    return {a_hat.dot(cartesian), b_hat.dot(cartesian), n_hat.dot(cartesian)};
  }
  Vec3 to_cartesian(const Vec3& in_frame) const {
    return in_frame.x() * a_hat + in_frame.y() * b_hat + in_frame.z() * n_hat;
  }
};

class NHHamiltonian {
 public:
  /// H = scale * (a - i b).sigma. Throws kDomain unless a.b = 0 (relative
  /// 1e-12) and |a| > |b|.
  NHHamiltonian(const Vec3& a, const Vec3& b, double scale = 1.0);

  /// H_theta = sec(theta) sigma_x + i tan(theta) sigma_z, i.e.
  /// A = sec(theta) x_hat and B = -tan(theta) z_hat. theta in [0, kThetaMax].
  static NHHamiltonian canonical(double theta, double scale = 1.0);

  /// Same family parameterized by delta = pi/2 - theta, evaluated without
  /// forming theta so that small delta keeps full relative precision.
  static NHHamiltonian canonical_from_delta(double delta, double scale = 1.0);

  const Vec3& a() const { return a_; }
  const Vec3& b() const { return b_; }
  double scale() const { return scale_; }

  Vec3 effective_a() const { return scale_ * a_; }
  Vec3 effective_b() const { return scale_ * b_; }

  /// Positive eigenvalue scale * sqrt(|A|^2 - |B|^2).
  double gap() const { return omega_; }

  /// Period of every Bloch trajectory, pi / gap().
  double period() const { return kPi / omega_; }

  CMat2 matrix() const;

  /// exp(-iHt) = cos(gap t) I - i sin(gap t) H / gap.
  CMat2 propagator(double t) const;

  Frame frame() const;

 private:
  NHHamiltonian(const Vec3& a, const Vec3& b, double scale, double omega,
                const Vec3& b_axis);

  Vec3 a_;
  Vec3 b_;
  double scale_;
  double omega_;
  Vec3 b_axis_;  // B direction used when |B| = 0
};

class PureState {
 public:
  /// Throws unless |amplitudes| = 1 within 1e-12.
  explicit PureState(const CVec2& amplitudes);

  static PureState normalized(const CVec2& v);
  static PureState up_z();
  static PureState down_z();
  /// (i, 1)/sqrt(2): the -1 eigenvector of sigma_y, Bloch vector -y_hat/2.
  static PureState up_y();
  /// (-i, 1)/sqrt(2): the +1 eigenvector of sigma_y.
  static PureState down_y();
  /// Bloch-sphere polar angles (theta_s, phi_s).
  static PureState from_angles(double polar, double azimuth);

  const CVec2& amplitudes() const { return amp_; }
  const cplx& operator[](int i) const { return amp_(i); }

  /// <this|other>
  cplx overlap(const PureState& other) const { return amp_.dot(other.amp_); }

  /// Bloch vector S with rho = I/2 + S.sigma.
  Vec3 bloch() const;

 private:
  CVec2 amp_;
};

class DensityMatrix {
 public:
  /// Throws unless Hermitian (1e-10), unit trace (1e-10) and eigenvalues
  /// >= -1e-10.
  explicit DensityMatrix(const CMat2& m);

  static DensityMatrix from_pure(const PureState& psi);
  /// rho = I/2 + S.sigma; requires |S| <= 1/2 + 1e-8.
  static DensityMatrix from_bloch(const Vec3& s);

  const CMat2& matrix() const { return m_; }
  Vec3 bloch() const;
  double purity() const;

 private:
  CMat2 m_;
};

enum class BlochFrame { kCartesian, kABn };

struct BlochVector {
  Vec3 s = Vec3::Zero();
  BlochFrame frame = BlochFrame::kCartesian;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec3> states;  // Cartesian Bloch vectors
  double kappa = 0;
  double rtol = 0;
  double atol = 0;
  std::string integrator;
  long steps = 0;
};

// Propagation ---------------------------------------------------------------

/// N(t) = 1 / |e^{-iHt} psi0|.
double normalization(const NHHamiltonian& h, const PureState& psi0, double t);

PureState evolve_pure(const NHHamiltonian& h, const PureState& psi0, double t);

DensityMatrix evolve_density(const NHHamiltonian& h, const DensityMatrix& rho0,
                             double t);

/// Right-hand side of the Bloch equation including the -2 kappa S noise term.
Vec3 bloch_rhs(const Vec3& s, const NHHamiltonian& h, double kappa);

/// Default tolerances of every adaptive integration in the library.
ode::Options default_ode_options();

/// Adaptive RK 5(4) solution of the Bloch equation sampled on `t_grid`
/// (non-decreasing, starting at or after 0; the initial condition is at t=0).
Trajectory integrate_bloch(const Vec3& s0, const NHHamiltonian& h, double kappa,
                           std::span<const double> t_grid,
                           const ode::Options& options = default_ode_options());

/// Bloch vector after time t. kappa = 0 uses the exact propagator; kappa > 0
/// the exact (extended precision) solution of the equivalent linear equation
/// for the unnormalized density matrix. t >= 0 when kappa > 0.
Vec3 propagate_bloch(const NHHamiltonian& h, const Vec3& s, double kappa, double t);

/// The noisy branch of propagate_bloch, usable at any kappa >= 0 (kappa = 0
/// reproduces the exact noiseless evolution to about 1e-10 at delta = 1e-3).
Vec3 propagate_bloch_linear(const NHHamiltonian& h, const Vec3& s, double kappa, double t);

/// Integrates the noisy density-matrix equation
///   drho/dt = -i[A.sigma, rho] - {B.sigma, rho} + 2 tr(rho B.sigma) rho
///             + kappa (I - 2 rho)
/// directly in matrix form.
DensityMatrix evolve_density_noisy(
    const NHHamiltonian& h, const DensityMatrix& rho0, double kappa, double t,
    const ode::Options& options = default_ode_options());

// Closed forms and diagnostics ---------------------------------------------

struct BnComponents {
  double s_b;
  double s_n;
};

/// Analytic (S_B, S_n) for the trajectory that starts at S = -n_hat/2 with
/// S_A = 0, in the frame of NHHamiltonian::frame():
///   S_B = (w/2) sin(2wt) / (A + B cos 2wt)
///   S_n = -(1/2) (B + A cos 2wt) / (A + B cos 2wt),  w = sqrt(A^2 - B^2).
/// This equals the commonly printed form with B -> -B; the printed sign does
/// not solve the Bloch equation from S_n(0) = -1/2.
BnComponents analytic_SB_Sn(double a_mag, double b_mag, double t);

/// arccos |<psi|phi>|, evaluated through atan2 for accuracy near 0.
double geodesic_distance(const PureState& psi, const PureState& phi);

/// Closed form of geodesic_distance(evolve_pure(H_theta, up_y, t), down_y).
double geodesic_distance_closed_form(double theta, double t);

/// Second-order coefficient v in |<psi(t)|psi(t+dt)>|^2 = 1 - v dt^2 + O(dt^3)
/// along the normalized trajectory psi(t) = N(t) e^{-iHt} psi0, from symmetric
/// differences at dt = 1e-4 and 5e-5 with one Richardson step.
double speed(const NHHamiltonian& h, const PureState& psi0, double t);

/// cos^2(theta) / (1 + cos(2t) sin(theta))^2 for H_theta and psi0 = up_y.
double speed_closed_form(double theta, double t);

}  // namespace nhlgi

#endif  // NHLGI_DYNAMICS_HPP

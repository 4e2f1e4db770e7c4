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

// Leggett-Garg correlators for sequential projective measurements of a
// dichotomic observable Q = q.sigma on a qubit evolving under an
// NHHamiltonian, with optional energy noise.
//
// Protocol for a pair of times t_i < t_j: propagate rho_I to t_i, measure Q
// (Born rule), collapse onto the observed eigenprojector, propagate for
// t_j - t_i and measure again. K3 = C12 + C23 - C13.

#ifndef NHLGI_LGI_HPP
#define NHLGI_LGI_HPP

#include <array>

#include "nhlgi/dynamics.hpp"

namespace nhlgi {

class Observable {
 public:
  /// Throws unless |direction| = 1 within 1e-12.
  explicit Observable(const Vec3& direction);

  static Observable from_angles(double polar, double azimuth);

  /// The measurement used with H_theta and |up_y>: |up_y> is its +1
  /// eigenstate, i.e. q = -y_hat under the pinned sigma_y.
  static Observable canonical();

  const Vec3& direction() const { return q_; }
  CMat2 op() const { return sigma_dot(q_); }
  /// Projector onto the eigenvalue `outcome` (+1 or -1).
  CMat2 projector(int outcome) const;
  /// Bloch vector of the post-measurement state for `outcome`.
  Vec3 eigenstate_bloch(int outcome) const { return 0.5 * outcome * q_; }

 private:
  Vec3 q_;
};

/// P(q_i, q_j); index 0 is outcome +1, index 1 is outcome -1.
struct JointTable {
  std::array<std::array<double, 2>, 2> p{};
  double t_i = 0;
  double t_j = 0;

  double at(int q_i, int q_j) const { return p[q_i > 0 ? 0 : 1][q_j > 0 ? 0 : 1]; }
  double sum() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
  double correlator() const { return p[0][0] - p[0][1] - p[1][0] + p[1][1]; }
};

struct LgiResult {
  double c12 = 0;
  double c23 = 0;
  double c13 = 0;
  double k3 = 0;
  JointTable j12;
  JointTable j23;
  JointTable j13;
  double t1 = 0, t2 = 0, t3 = 0;
  double kappa = 0;
};

JointTable joint_table(const NHHamiltonian& h, const DensityMatrix& rho_i,
                       const Observable& q, double t_i, double t_j,
                       double kappa = 0);

double joint_probability(const NHHamiltonian& h, const DensityMatrix& rho_i,
                         const Observable& q, double t_i, double t_j, int q_i,
                         int q_j, double kappa = 0);

double correlator(const NHHamiltonian& h, const DensityMatrix& rho_i,
                  const Observable& q, double t_i, double t_j, double kappa = 0);

LgiResult k3(const NHHamiltonian& h, const DensityMatrix& rho_i,
             const Observable& q, double t1, double t2, double t3,
             double kappa = 0);

/// K3 without input validation or joint tables, for optimizer inner loops.
/// Accepts t1 <= t2 <= t3 (a zero gap gives C = 1).
double k3_value(const NHHamiltonian& h, const Vec3& bloch_i, const Vec3& q,
                double t1, double t2, double t3, double kappa);

struct ClosedFormK3 {
  double c12;
  double c23;
  double c13;
  double k3;
};

/// Closed-form correlators for H_theta, rho_I = |up_y><up_y|, the canonical
/// observable and equal spacing t1 = 0, t2 = t, t3 = 2t.
/// theta in [0, pi/2), t in (0, pi/2].
ClosedFormK3 k3_closed_form(double theta, double t);

}  // namespace nhlgi

#endif  // NHLGI_LGI_HPP

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

// Hermitian dilation of H_theta = sec(theta) sigma_x + i tan(theta) sigma_z
// on ancilla (x) system:
//
//   H_T = I (x) H_s + sigma_y (x) V,  H_s = cos(theta) sigma_x,
//                                     V   = -sin(theta) sigma_z.
//
// States of the form N_T (|up_z> (x) psi + |down_z> (x) eta psi), with the
// metric eta = sec(theta) I + tan(theta) sigma_y (eta H = H^dagger eta), keep
// that form under exp(-i H_T t); projecting the ancilla onto |up_z> and
// renormalizing recovers N(t) exp(-i H_theta t) psi.

#ifndef NHLGI_EMBEDDING_HPP
#define NHLGI_EMBEDDING_HPP

#include "nhlgi/dynamics.hpp"
#include "nhlgi/lgi.hpp"

namespace nhlgi {

struct Metric {
  CMat2 eta;
  double theta = 0;
};

struct EmbeddedState {
  CVec4 vector;   // ancilla (x) system
  double n_t = 0; // 1 / sqrt(<psi|(I + eta^2)|psi>)
};

struct PostSelection {
  PureState state;
  double p_select;
  CVec4 evolved;  // full 4-vector before projection
};

/// One member of the dilation family. theta = pi/2 - delta; constructing from
/// delta keeps sin/cos exact for small delta.
class Embedding {
 public:
  /// theta in [0, pi/2 - 1e-6].
  static Embedding from_theta(double theta);
  /// delta in [1e-6, pi/2]. delta = 0 is rejected: the embedded state becomes
  /// separable and post-selection no longer reproduces the dynamics.
  static Embedding from_delta(double delta);

  double sin_theta() const { return sin_; }
  double cos_theta() const { return cos_; }

  Metric metric() const;
  CMat2 system_hamiltonian() const;
  CMat2 coupling() const;
  CMat4 hamiltonian() const;
  NHHamiltonian effective_hamiltonian() const;

  EmbeddedState embed(const PureState& psi) const;

  /// Unitary 4D evolution for time t, ancilla post-selection on |up_z>.
  /// Throws kPostSelectionStarvation when p_select < 1e-14.
  PostSelection evolve_and_postselect(const PureState& psi0, double t) const;

  /// Full three-time measurement protocol inside the dilation: evolve,
  /// post-select, measure q.sigma on the system, re-embed the collapsed
  /// state and continue.
  LgiResult k3(const PureState& psi0, const Observable& q, double t1, double t2,
               double t3) const;

 private:
  Embedding(double sin_theta, double cos_theta, double delta);

  JointTable joint_table(const PureState& psi0, const Observable& q, double t_i,
                         double t_j) const;

  double sin_;
  double cos_;
  double delta_;
};

Metric build_metric(double theta);
CMat4 build_HT(double theta);
EmbeddedState build_psi_T(double theta, const PureState& psi);
PostSelection evolve_and_postselect(double theta, const PureState& psi0, double t);
LgiResult k3_via_embedding(double theta, const Observable& q, double t1,
                           double t2, double t3,
                           const PureState& psi0 = PureState::up_y());

}  // namespace nhlgi

#endif  // NHLGI_EMBEDDING_HPP

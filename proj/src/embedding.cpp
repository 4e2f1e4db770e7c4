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

#include "nhlgi/embedding.hpp"

#include <algorithm>
#include <cmath>

namespace nhlgi {

Embedding::Embedding(double sin_theta, double cos_theta, double delta)
    : sin_(sin_theta), cos_(cos_theta), delta_(delta) {}

Embedding Embedding::from_theta(double theta) {
  if (!std::isfinite(theta) || theta < 0 || theta > kThetaMax)
    fail(ErrorCode::kDomain, "embedding: theta must lie in [0, pi/2 - 1e-6]");
  return from_delta(kPi / 2 - theta);
}

Embedding Embedding::from_delta(double delta) {
  if (!std::isfinite(delta))
    fail(ErrorCode::kNonFinite, "embedding: non-finite delta");
  if (delta < kPi / 2 - kThetaMax || delta > kPi / 2)
    fail(ErrorCode::kDomain,
         "embedding: delta must lie in [1e-6, pi/2]; at delta = 0 the embedded "
         "state is separable and the dilation breaks down");
  Embedding e(std::cos(delta), std::sin(delta), delta);
  // eta H = H^dagger eta, relative to the operator scale.
  const Metric m = e.metric();
  const CMat2 h = e.effective_hamiltonian().matrix();
  const double defect = (m.eta * h - h.adjoint() * m.eta).norm();
  if (defect > 1e-10 * std::max(1.0, m.eta.norm() * h.norm()))
    fail(ErrorCode::kInternal, "embedding: metric does not intertwine H_theta");
  return e;
}

Metric Embedding::metric() const {
  Metric m;
  m.theta = kPi / 2 - delta_;
  m.eta = (1.0 / cos_) * CMat2::Identity() + (sin_ / cos_) * pauli(Axis::kY);
  return m;
}

CMat2 Embedding::system_hamiltonian() const { return cos_ * pauli(Axis::kX); }

CMat2 Embedding::coupling() const { return -sin_ * pauli(Axis::kZ); }

CMat4 Embedding::hamiltonian() const {
  return kron(CMat2::Identity(), system_hamiltonian()) +
         kron(pauli(Axis::kY), coupling());
}

NHHamiltonian Embedding::effective_hamiltonian() const {
  return NHHamiltonian::canonical_from_delta(delta_);
}

EmbeddedState Embedding::embed(const PureState& psi) const {
  const CMat2 eta = metric().eta;
  const CVec2 lower = eta * psi.amplitudes();
  const double weight = 1.0 + lower.squaredNorm();  // <psi|(I + eta^2)|psi>
  EmbeddedState out;
  out.n_t = 1.0 / std::sqrt(weight);
  out.vector.head<2>() = out.n_t * psi.amplitudes();
  out.vector.tail<2>() = out.n_t * lower;
  return out;
}

PostSelection Embedding::evolve_and_postselect(const PureState& psi0,
                                               double t) const {
  if (!std::isfinite(t)) fail(ErrorCode::kNonFinite, "evolve_and_postselect: non-finite time");
  const EmbeddedState start = embed(psi0);
  const CVec4 evolved = exp_hermitian_4x4(hamiltonian(), t) * start.vector;
  const CVec2 upper = evolved.head<2>();
  const double p = upper.squaredNorm();
  if (p < 1e-14)
    fail(ErrorCode::kPostSelectionStarvation,
         "evolve_and_postselect: ancilla up-branch probability below 1e-14");
  return {PureState::normalized(upper), p, evolved};
}

namespace {

PureState eigenstate(const Observable& q, int outcome) {
  const Vec3 d = outcome * q.direction();
  return PureState::from_angles(std::acos(std::clamp(d.z(), -1.0, 1.0)),
                                std::atan2(d.y(), d.x()));
}

double born(const Observable& q, const PureState& psi, int outcome) {
  const CVec2& v = psi.amplitudes();
  return std::clamp(std::real(v.dot(q.projector(outcome) * v)), 0.0, 1.0);
}

}  // namespace

JointTable Embedding::joint_table(const PureState& psi0, const Observable& q,
                                  double t_i, double t_j) const {
  JointTable table;
  table.t_i = t_i;
  table.t_j = t_j;
  const PureState at_ti = evolve_and_postselect(psi0, t_i).state;
  for (int a = 0; a < 2; ++a) {
    const int qa = a == 0 ? 1 : -1;
    const double pa = born(q, at_ti, qa);
    if (pa == 0) continue;
    const PureState after = evolve_and_postselect(eigenstate(q, qa), t_j - t_i).state;
    for (int b = 0; b < 2; ++b) table.p[a][b] = pa * born(q, after, b == 0 ? 1 : -1);
  }
  return table;
}

LgiResult Embedding::k3(const PureState& psi0, const Observable& q, double t1,
                        double t2, double t3) const {
  if (!std::isfinite(t1) || !std::isfinite(t2) || !std::isfinite(t3))
    fail(ErrorCode::kNonFinite, "k3_via_embedding: non-finite time");
  if (!(t1 >= 0 && t1 < t2 && t2 < t3))
    fail(ErrorCode::kInvalidArgument, "k3_via_embedding: requires 0 <= t1 < t2 < t3");
  LgiResult r;
  r.j12 = joint_table(psi0, q, t1, t2);
  r.j23 = joint_table(psi0, q, t2, t3);
  r.j13 = joint_table(psi0, q, t1, t3);
  r.c12 = r.j12.correlator();
  r.c23 = r.j23.correlator();
  r.c13 = r.j13.correlator();
  r.k3 = r.c12 + r.c23 - r.c13;
  r.t1 = t1;
  r.t2 = t2;
  r.t3 = t3;
  return r;
}

Metric build_metric(double theta) { return Embedding::from_theta(theta).metric(); }

CMat4 build_HT(double theta) { return Embedding::from_theta(theta).hamiltonian(); }

EmbeddedState build_psi_T(double theta, const PureState& psi) {
  return Embedding::from_theta(theta).embed(psi);
}

PostSelection evolve_and_postselect(double theta, const PureState& psi0, double t) {
  return Embedding::from_theta(theta).evolve_and_postselect(psi0, t);
}

LgiResult k3_via_embedding(double theta, const Observable& q, double t1,
                           double t2, double t3, const PureState& psi0) {
  return Embedding::from_theta(theta).k3(psi0, q, t1, t2, t3);
}

}  // namespace nhlgi

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

#include "nhlgi/lgi.hpp"

#include <algorithm>
#include <cmath>

namespace nhlgi {

Observable::Observable(const Vec3& direction) : q_(direction) {
  if (!direction.allFinite()) fail(ErrorCode::kNonFinite, "Observable: non-finite direction");
  if (std::abs(direction.norm() - 1.0) > 1e-12)
    fail(ErrorCode::kInvalidArgument, "Observable: direction must be a unit vector");
}

Observable Observable::from_angles(double polar, double azimuth) {
  if (!std::isfinite(polar) || !std::isfinite(azimuth))
    fail(ErrorCode::kNonFinite, "Observable::from_angles: non-finite angle");
  const Vec3 d(std::sin(polar) * std::cos(azimuth),
               std::sin(polar) * std::sin(azimuth), std::cos(polar));
  return Observable(d.normalized());
}

Observable Observable::canonical() { return Observable(Vec3(0, -1, 0)); }

CMat2 Observable::projector(int outcome) const {
  if (outcome != 1 && outcome != -1)
    fail(ErrorCode::kInvalidArgument, "Observable::projector: outcome must be +1 or -1");
  return 0.5 * (CMat2::Identity() + static_cast<double>(outcome) * op());
}

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

// Born probability of `outcome` for Bloch vector s.
double born(const Vec3& q, const Vec3& s, int outcome) {
  return clamp01(0.5 + outcome * q.dot(s));
}

void check_times(double t_i, double t_j, const char* where) {
  if (!std::isfinite(t_i) || !std::isfinite(t_j))
    fail(ErrorCode::kNonFinite, std::string(where) + ": non-finite time");
  if (!(t_i >= 0 && t_i < t_j))
    fail(ErrorCode::kInvalidArgument, std::string(where) + ": requires 0 <= t_i < t_j");
}

JointTable table_from(const NHHamiltonian& h, const Vec3& s_at_ti,
                      const Vec3& q, double t_i, double t_j, double kappa) {
  JointTable table;
  table.t_i = t_i;
  table.t_j = t_j;
  for (int a = 0; a < 2; ++a) {
    const int qa = a == 0 ? 1 : -1;
    const double pa = born(q, s_at_ti, qa);
    if (pa == 0) continue;
    const Vec3 after = propagate_bloch(h, 0.5 * qa * q, kappa, t_j - t_i);
    for (int b = 0; b < 2; ++b) table.p[a][b] = pa * born(q, after, b == 0 ? 1 : -1);
  }
  return table;
}

// sum_{a,b} a b P(a) P(b|a) = sum_a a P(a) <Q>_a.
double correlator_from(const NHHamiltonian& h, const Vec3& s_at_ti,
                       const Vec3& q, double gap, double kappa) {
  double c = 0;
  for (int qa : {1, -1}) {
    const double pa = born(q, s_at_ti, qa);
    if (pa == 0) continue;
    const Vec3 after = propagate_bloch(h, 0.5 * qa * q, kappa, gap);
    c += qa * pa * std::clamp(2.0 * q.dot(after), -1.0, 1.0);
  }
  return c;
}

}  // namespace

JointTable joint_table(const NHHamiltonian& h, const DensityMatrix& rho_i,
                       const Observable& q, double t_i, double t_j,
                       double kappa) {
  check_times(t_i, t_j, "joint_table");
  const Vec3 s = propagate_bloch(h, rho_i.bloch(), kappa, t_i);
  return table_from(h, s, q.direction(), t_i, t_j, kappa);
}

double joint_probability(const NHHamiltonian& h, const DensityMatrix& rho_i,
                         const Observable& q, double t_i, double t_j, int q_i,
                         int q_j, double kappa) {
  if ((q_i != 1 && q_i != -1) || (q_j != 1 && q_j != -1))
    fail(ErrorCode::kInvalidArgument, "joint_probability: outcomes must be +1 or -1");
  return joint_table(h, rho_i, q, t_i, t_j, kappa).at(q_i, q_j);
}

double correlator(const NHHamiltonian& h, const DensityMatrix& rho_i,
                  const Observable& q, double t_i, double t_j, double kappa) {
  return joint_table(h, rho_i, q, t_i, t_j, kappa).correlator();
}

LgiResult k3(const NHHamiltonian& h, const DensityMatrix& rho_i,
             const Observable& q, double t1, double t2, double t3,
             double kappa) {
  check_times(t1, t2, "k3");
  check_times(t2, t3, "k3");
  const Vec3 s0 = rho_i.bloch();
  const Vec3 s1 = propagate_bloch(h, s0, kappa, t1);
  const Vec3 s2 = propagate_bloch(h, s1, kappa, t2 - t1);
  LgiResult r;
  r.j12 = table_from(h, s1, q.direction(), t1, t2, kappa);
  r.j23 = table_from(h, s2, q.direction(), t2, t3, kappa);
  r.j13 = table_from(h, s1, q.direction(), t1, t3, kappa);
  r.c12 = r.j12.correlator();
  r.c23 = r.j23.correlator();
  r.c13 = r.j13.correlator();
  r.k3 = r.c12 + r.c23 - r.c13;
  r.t1 = t1;
  r.t2 = t2;
  r.t3 = t3;
  r.kappa = kappa;
  return r;
}

double k3_value(const NHHamiltonian& h, const Vec3& bloch_i, const Vec3& q,
                double t1, double t2, double t3, double kappa) {
  const Vec3 s1 = propagate_bloch(h, bloch_i, kappa, t1);
  const Vec3 s2 = propagate_bloch(h, s1, kappa, t2 - t1);
  return correlator_from(h, s1, q, t2 - t1, kappa) +
         correlator_from(h, s2, q, t3 - t2, kappa) -
         correlator_from(h, s1, q, t3 - t1, kappa);
}

ClosedFormK3 k3_closed_form(double theta, double t) {
  if (!std::isfinite(theta) || theta < 0 || theta > kThetaMax)
    fail(ErrorCode::kDomain, "k3_closed_form: theta must lie in [0, pi/2)");
  if (!std::isfinite(t) || !(t > 0) || t > kPi / 2 + 1e-15)
    fail(ErrorCode::kDomain, "k3_closed_form: t must lie in (0, pi/2]");
  const double s = std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double cos2t = std::cos(2 * t);
  const double sin2t = std::sin(2 * t);
  const double cos4t = std::cos(4 * t);
  ClosedFormK3 r;
  r.c12 = (cos2t + s) / (1 + cos2t * s);
  r.c13 = (cos4t + s) / (1 + cos4t * s);
  r.c23 = -(cos2t * cos2t * c2 * s + sin2t * sin2t * s * s +
            cos2t * (c2 + sin2t * sin2t * s)) /
          ((-1 + cos2t * s) * (1 + cos2t * s) * (1 + cos2t * s));
  r.k3 = r.c12 + r.c23 - r.c13;
  return r;
}

}  // namespace nhlgi

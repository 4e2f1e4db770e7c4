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

#include "doctest.h"
#include "support.hpp"

#include "nhlgi/dynamics.hpp"

#include <limits>
#include <vector>

using namespace nhlgi;
using nhlgi::testing::uniform;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

}  // namespace

TEST_CASE("NHHamiltonian validation") {
  CHECK(code_of([] { NHHamiltonian(Vec3(1, 0, 0), Vec3(0.5, 0, 0)); }) == ErrorCode::kDomain);
  CHECK(code_of([] { NHHamiltonian(Vec3(1, 0, 0), Vec3(0, 0, 1)); }) == ErrorCode::kDomain);
  CHECK(code_of([] { NHHamiltonian::canonical(kPi / 2); }) == ErrorCode::kDomain);
  CHECK(code_of([] { NHHamiltonian::canonical(-0.1); }) == ErrorCode::kDomain);
  const NHHamiltonian h(Vec3(0, 2, 0), Vec3(1, 0, 0), 0.5);
  CHECK(h.gap() == doctest::Approx(0.5 * std::sqrt(3.0)));
}

TEST_CASE("canonical family matrix and gap") {
  for (double theta : {0.0, 0.7, 1.4}) {
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    const CMat2 expect = pauli(Axis::kX) / std::cos(theta) +
                         kI * std::tan(theta) * pauli(Axis::kZ);
    CHECK((h.matrix() - expect).norm() < 1e-14);
    CHECK(h.gap() == doctest::Approx(1.0));
    CHECK(h.period() == doctest::Approx(kPi));
  }
  // The delta form keeps precision where theta would lose it.
  const NHHamiltonian hd = NHHamiltonian::canonical_from_delta(1e-3);
  const NHHamiltonian ht = NHHamiltonian::canonical(kPi / 2 - 1e-3);
  CHECK((hd.matrix() - ht.matrix()).norm() < 1e-9);
  CHECK(hd.gap() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("propagator agrees with the series exponential") {
  const NHHamiltonian h(Vec3(0.3, -1.1, 0.4), Vec3(0.2, 0.1, 0.125), 1.3);
  for (double t : {0.0, 0.2, 1.5, 4.0}) {
    const CMat2 oracle = expm_taylor<CMat2>(-kI * t * h.matrix());
    CHECK((h.propagator(t) - oracle).norm() < 1e-12);
  }
}

TEST_CASE("evolve_pure examples") {
  // Hermitian Rabi rotation.
  const NHHamiltonian h0 = NHHamiltonian::canonical(0.0);
  for (double t : linspace(0, 3, 13)) {
    const PureState psi = evolve_pure(h0, PureState::up_y(), t);
    CHECK(std::norm(PureState::down_y().overlap(psi)) ==
          doctest::Approx(std::pow(std::sin(t), 2)).epsilon(1e-12));
  }
  // t = pi/2 reaches |down_y> for every theta.
  for (double theta : {0.0, 0.5, 1.0, 1.4, kPi / 2 - 1e-3}) {
    const PureState psi = evolve_pure(NHHamiltonian::canonical(theta), PureState::up_y(), kPi / 2);
    CHECK(nhlgi::testing::phase_distance(psi.amplitudes(),
                                          PureState::down_y().amplitudes()) < 1e-12);
  }
  for (int i = 0; i < 1000; ++i) {
    const NHHamiltonian h = NHHamiltonian::canonical(uniform(0, 1.55));
    const PureState psi = evolve_pure(h, nhlgi::testing::random_pure(), uniform(0, 10));
    CHECK(psi.amplitudes().norm() == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("normalization is the reciprocal norm") {
  const NHHamiltonian h = NHHamiltonian::canonical(1.1);
  const PureState psi0 = PureState::up_y();
  for (double t : {0.0, 0.4, 1.3}) {
    const double n = normalization(h, psi0, t);
    CHECK(n * (h.propagator(t) * psi0.amplitudes()).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("PureState and DensityMatrix conventions") {
  CHECK((PureState::up_y().bloch() - Vec3(0, -0.5, 0)).norm() < 1e-15);
  CHECK((PureState::down_y().bloch() - Vec3(0, 0.5, 0)).norm() < 1e-15);
  CHECK((PureState::up_z().bloch() - Vec3(0, 0, 0.5)).norm() < 1e-15);
  CHECK(code_of([] { PureState(CVec2(1.0, 1.0)); }) == ErrorCode::kInvalidArgument);
  const DensityMatrix rho = DensityMatrix::from_bloch(Vec3(0.1, -0.2, 0.3));
  CHECK((rho.bloch() - Vec3(0.1, -0.2, 0.3)).norm() < 1e-15);
  CHECK(rho.purity() == doctest::Approx(0.5 + 2 * 0.14));
  CHECK_THROWS_AS(DensityMatrix::from_bloch(Vec3(0.6, 0, 0)), Error);
  CHECK_THROWS_AS(DensityMatrix(CMat2::Identity()), Error);
}

TEST_CASE("evolve_density agrees with evolve_pure") {
  const NHHamiltonian h = NHHamiltonian::canonical(1.2);
  const DensityMatrix rho0 = DensityMatrix::from_pure(PureState::up_y());
  CHECK((evolve_density(h, rho0, 0.0).matrix() - rho0.matrix()).norm() == 0.0);
  for (double t : linspace(0.1, 3.0, 15)) {
    const PureState psi = evolve_pure(h, PureState::up_y(), t);
    const CMat2 proj = psi.amplitudes() * psi.amplitudes().adjoint();
    const CMat2 rho = evolve_density(h, rho0, t).matrix();
    CHECK((rho - proj).norm() < 1e-10);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  }
  for (int i = 0; i < 100; ++i) {
    const Vec3 s = nhlgi::testing::random_unit() * uniform(0, 0.5);
    const NHHamiltonian hr = NHHamiltonian::canonical(uniform(0, 1.5));
    const CMat2 rho = evolve_density(hr, DensityMatrix::from_bloch(s), uniform(0, 5)).matrix();
    CHECK(std::abs(rho.trace() - 1.0) < 1e-10);
  }
}

TEST_CASE("bloch_rhs examples") {
  const NHHamiltonian larmor(Vec3(1, 0, 0), Vec3::Zero());
  CHECK((bloch_rhs(Vec3(0, 0, 0.5), larmor, 0.0) - Vec3(0, -1, 0)).norm() < 1e-15);

  // Pure states keep their length.
  for (int i = 0; i < 200; ++i) {
    const NHHamiltonian h = NHHamiltonian::canonical(uniform(0, 1.5));
    const Vec3 s = 0.5 * nhlgi::testing::random_unit();
    CHECK(std::abs(s.dot(bloch_rhs(s, h, 0.0))) < 1e-13);
  }
  // The noise term is -2 kappa S.
  const NHHamiltonian h = NHHamiltonian::canonical(0.8);
  const Vec3 s(0.1, 0.2, -0.05);
  CHECK((bloch_rhs(s, h, 0.7) - bloch_rhs(s, h, 0.0) + 1.4 * s).norm() < 1e-15);
}

TEST_CASE("integrate_bloch Larmor precession") {
  const NHHamiltonian larmor(Vec3(1, 0, 0), Vec3::Zero());
  const std::vector<double> grid = linspace(0, 5, 51);
  const Trajectory traj = integrate_bloch(Vec3(0, 0, 0.5), larmor, 0.0, grid);
  REQUIRE(traj.states.size() == grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Vec3 expect(0, -0.5 * std::sin(2 * grid[j]), 0.5 * std::cos(2 * grid[j]));
    CHECK((traj.states[j] - expect).norm() < 1e-9);
  }
}

TEST_CASE("integrate_bloch pure relaxation") {
  // A and B vanish only up to the strict inequality; a tiny A keeps the
  // Hamiltonian valid while leaving the relaxation visible.
  const NHHamiltonian h(Vec3(1e-12, 0, 0), Vec3::Zero());
  const double kappa = 0.3;
  const std::vector<double> grid = linspace(0, 4, 9);
  const Vec3 s0(0.1, 0.2, 0.3);
  const Trajectory traj = integrate_bloch(s0, h, kappa, grid);
  for (std::size_t j = 0; j < grid.size(); ++j)
    CHECK((traj.states[j] - s0 * std::exp(-2 * kappa * grid[j])).norm() < 1e-10);
}

TEST_CASE("integrate_bloch matches exact propagation") {
  for (double theta : {0.0, 0.6, 1.2, 1.5}) {
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    const PureState psi0 = nhlgi::testing::random_pure();
    const std::vector<double> grid = linspace(0, 2 * kPi, 61);
    const Trajectory traj = integrate_bloch(psi0.bloch(), h, 0.0, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      CHECK((traj.states[j] - evolve_pure(h, psi0, grid[j]).bloch()).norm() < 1e-6);
      CHECK((traj.states[j] - propagate_bloch(h, psi0.bloch(), 0.0, grid[j])).norm() < 1e-6);
    }
  }
}

TEST_CASE("S_A = 0 is invariant and S_A -> -S_A mirrors the trajectory") {
  const NHHamiltonian h = NHHamiltonian::canonical(1.0);
  const Frame f = h.frame();
  const std::vector<double> grid = linspace(0, 10 * kPi, 201);
  const Vec3 s0 = f.to_cartesian(Vec3(0.3, 0.4 * std::cos(0.7), 0.4 * std::sin(0.7)));
  const Vec3 s0m = f.to_cartesian(Vec3(-0.3, 0.4 * std::cos(0.7), 0.4 * std::sin(0.7)));
  const Trajectory a = integrate_bloch(s0, h, 0.0, grid);
  const Trajectory b = integrate_bloch(s0m, h, 0.0, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Vec3 fa = f.to_frame(a.states[j]), fb = f.to_frame(b.states[j]);
    CHECK(std::abs(fa.x() + fb.x()) < 1e-8);
    CHECK(std::abs(fa.y() - fb.y()) < 1e-8);
    CHECK(std::abs(fa.z() - fb.z()) < 1e-8);
  }
  const Trajectory c = integrate_bloch(f.to_cartesian(Vec3(0, 0.5, 0)), h, 0.0, grid);
  for (const Vec3& s : c.states) CHECK(std::abs(f.to_frame(s).x()) < 1e-8);
}

TEST_CASE("integrate_bloch rejects bad grids and reports stiffness") {
  const NHHamiltonian h = NHHamiltonian::canonical(0.5);
  const std::vector<double> bad = {0.0, 1.0, 0.5};
  CHECK(code_of([&] { integrate_bloch(Vec3(0, -0.5, 0), h, 0.0, bad); }) ==
        ErrorCode::kInvalidArgument);
  ode::Options tight = default_ode_options();
  tight.max_steps = 5;
  const std::vector<double> grid = {10.0};
  CHECK(code_of([&] { integrate_bloch(Vec3(0, -0.5, 0), h, 0.0, grid, tight); }) ==
        ErrorCode::kStiffness);
}

TEST_CASE("analytic_SB_Sn") {
  const BnComponents at0 = analytic_SB_Sn(2.0, 1.0, 0.0);
  CHECK(at0.s_b == doctest::Approx(0.0));
  CHECK(at0.s_n == doctest::Approx(-0.5));
  const double w = std::sqrt(3.0);
  const BnComponents half = analytic_SB_Sn(2.0, 1.0, kPi / (2 * w));
  CHECK(std::abs(half.s_b) < 1e-15);
  CHECK(half.s_n == doctest::Approx(0.5));
  for (double t : {0.1, 0.7, 2.9}) {
    const BnComponents a = analytic_SB_Sn(2.0, 1.0, t);
    const BnComponents b = analytic_SB_Sn(2.0, 1.0, t + kPi / w);
    CHECK(std::abs(a.s_b - b.s_b) < 1e-12);
    CHECK(std::abs(a.s_n - b.s_n) < 1e-12);
    CHECK(std::hypot(a.s_b, a.s_n) == doctest::Approx(0.5));
  }
  CHECK(code_of([] { analytic_SB_Sn(1.0, 1.0, 0.1); }) == ErrorCode::kDomain);
  CHECK(code_of([] { analytic_SB_Sn(1.0, -0.1, 0.1); }) == ErrorCode::kDomain);
}

TEST_CASE("analytic_SB_Sn matches RK at theta = 1.2") {
  const NHHamiltonian h = NHHamiltonian::canonical(1.2);
  const Frame f = h.frame();
  const std::vector<double> grid = linspace(0, 2 * kPi, 101);
  const Trajectory traj = integrate_bloch(PureState::up_y().bloch(), h, 0.0, grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Vec3 abn = f.to_frame(traj.states[j]);
    const BnComponents cf = analytic_SB_Sn(h.a().norm(), h.b().norm(), grid[j]);
    CHECK(std::abs(abn.y() - cf.s_b) < 1e-6);
    CHECK(std::abs(abn.z() - cf.s_n) < 1e-6);
  }
}

TEST_CASE("geodesic distance") {
  const PureState psi = nhlgi::testing::random_pure();
  CHECK(geodesic_distance(psi, psi) < 1e-7);
  CHECK(geodesic_distance(PureState::up_y(), PureState::down_y()) == doctest::Approx(kPi / 2));
  for (double theta : {0.0, 0.5, 1.0, 1.4}) {
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    for (double t : linspace(0.05, 3.0, 20)) {
      const double d = geodesic_distance(evolve_pure(h, PureState::up_y(), t), PureState::down_y());
      CHECK(std::abs(d - geodesic_distance_closed_form(theta, t)) < 1e-8);
    }
  }
  // D = sin(delta) for pure states.
  for (int i = 0; i < 500; ++i) {
    const PureState a = nhlgi::testing::random_pure(), b = nhlgi::testing::random_pure();
    const double d = trace_distance(DensityMatrix::from_pure(a).matrix(),
                                    DensityMatrix::from_pure(b).matrix());
    CHECK(std::abs(d - std::sin(geodesic_distance(a, b))) < 1e-10);
  }
}

TEST_CASE("speed") {
  const NHHamiltonian h0 = NHHamiltonian::canonical(0.0);
  for (double t : {0.0, 0.4, 1.9}) {
    CHECK(speed(h0, PureState::up_y(), t) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(speed_closed_form(0.0, t) == doctest::Approx(1.0));
  }
  const double v_cf = speed_closed_form(kPi / 3, kPi / 2);
  CHECK(v_cf == doctest::Approx(0.25 / std::pow(1 - std::sin(kPi / 3), 2)));
  CHECK(v_cf == doctest::Approx(13.93).epsilon(1e-3));
  const double v = speed(NHHamiltonian::canonical(kPi / 3), PureState::up_y(), kPi / 2);
  CHECK(std::abs(v - v_cf) / v_cf < 1e-3);

  for (double theta : {0.0, 0.5, 1.0, 1.4}) {
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    for (int j = 1; j <= 50; ++j) {
      const double t = kPi * j / 51.0;
      const double vc = speed_closed_form(theta, t);
      CHECK(std::abs(speed(h, PureState::up_y(), t) - vc) / vc < 1e-4);
    }
  }
}

TEST_CASE("propagate_bloch_linear matches RK with noise") {
  for (double theta : {0.3, 1.2}) {
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    for (double kappa : {0.0, 1e-4, 0.05, 0.5, 3.0}) {
      const Vec3 s0 = nhlgi::testing::random_unit() * 0.45;
      const std::vector<double> grid = linspace(0, 3, 13);
      const Trajectory traj = integrate_bloch(s0, h, kappa, grid);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        CHECK((propagate_bloch_linear(h, s0, kappa, grid[j]) - traj.states[j]).norm() < 1e-8);
        CHECK((propagate_bloch(h, s0, kappa, grid[j]) - traj.states[j]).norm() < 1e-8);
      }
    }
  }
  // Near the singular end with strong noise.
  const NHHamiltonian hd = NHHamiltonian::canonical_from_delta(1e-3);
  const Vec3 s0 = PureState::up_y().bloch();
  for (double kappa : {1e-2, 10.0, 1e3}) {
    const double times[] = {0.0, 1e-4, 1e-3, 0.01, 0.3};
    const Trajectory traj = integrate_bloch(s0, hd, kappa, times);
    for (std::size_t j = 0; j < 5; ++j)
      CHECK((propagate_bloch(hd, s0, kappa, times[j]) - traj.states[j]).norm() < 1e-7);
  }
  // kappa = 0 linear path against the exact one.
  const NHHamiltonian h = NHHamiltonian::canonical(0.9);
  for (double t : {0.2, 1.0, 2.5})
    CHECK((propagate_bloch_linear(h, s0, 0.0, t) - evolve_pure(h, PureState::up_y(), t).bloch())
              .norm() < 1e-10);
}

TEST_CASE("evolve_density_noisy") {
  const NHHamiltonian h = NHHamiltonian::canonical(0.9);
  const DensityMatrix rho0 = DensityMatrix::from_pure(PureState::up_y());
  for (double t : linspace(0, kPi, 9))
    CHECK((evolve_density_noisy(h, rho0, 0.0, t).matrix() - evolve_density(h, rho0, t).matrix())
              .norm() < 1e-8);
  // Pure relaxation towards I/2 at rate 2 kappa.
  const NHHamiltonian quiet(Vec3(1e-12, 0, 0), Vec3::Zero());
  const double kappa = 0.25;
  for (double t : {0.5, 2.0, 6.0}) {
    const DensityMatrix rho = evolve_density_noisy(quiet, rho0, kappa, t);
    CHECK((rho.bloch() - rho0.bloch() * std::exp(-2 * kappa * t)).norm() < 1e-10);
  }
  // Trace is preserved, and the result agrees with the Bloch-form propagator.
  for (double k : {0.01, 0.3, 2.0}) {
    for (double t : {0.4, 1.7}) {
      const DensityMatrix rho = evolve_density_noisy(h, rho0, k, t);
      CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-10);
      CHECK((rho.bloch() - propagate_bloch(h, rho0.bloch(), k, t)).norm() < 1e-8);
    }
  }
}

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

#include "nhlgi/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>

#include "nhlgi/embedding.hpp"
#include "nhlgi/scan.hpp"

namespace nhlgi {

namespace {

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

struct Outcome {
  bool passed;
  std::string detail;
};

const DensityMatrix& up_y_rho() {
  static const DensityMatrix rho = DensityMatrix::from_pure(PureState::up_y());
  return rho;
}

PureState random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0, 1);
  return PureState::normalized(CVec2(cplx(n(rng), n(rng)), cplx(n(rng), n(rng))));
}

// Scan results shared by criteria 3 and 9.
class ScanCache {
 public:
  const ScanResult& k3(double theta) {
    auto it = k3_.find(theta);
    if (it == k3_.end()) it = k3_.emplace(theta, maximize_k3(theta, 0.0)).first;
    return it->second;
  }
  const ScanResult& speed(double theta) {
    auto it = speed_.find(theta);
    if (it == speed_.end()) it = speed_.emplace(theta, maximize_speed(theta)).first;
    return it->second;
  }

 private:
  std::map<double, ScanResult> k3_, speed_;
};

Outcome closed_form_k3() {
  const double deltas[] = {kPi / 2, kPi / 3, kPi / 4, kPi / 6, kPi / 2 - 1.4, 1e-3};
  double worst = 0;
  for (double delta : deltas) {
    const NHHamiltonian h = NHHamiltonian::canonical_from_delta(delta);
    const double s = std::cos(delta);  // sin(theta)
    const double k = k3(h, up_y_rho(), Observable::canonical(), 0, kPi / 4, kPi / 2).k3;
    worst = std::max(worst, std::abs(k - (1 + s + s * s)));
  }
  return {worst <= 1e-8, fmt("max |K3 - (1 + sin + sin^2)| = %.2e (tol 1e-8)", worst)};
}

Outcome c13_pinning() {
  double worst = 0, worst_pin = 0;
  for (int i = 0; i < 20; ++i) {
    const double theta = 1.5 * i / 19.0;
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    const double s = std::sin(theta);
    for (int j = 1; j <= 20; ++j) {
      const double t = kPi / 2 * j / 20.0;
      const double c13 = correlator(h, up_y_rho(), Observable::canonical(), 0, 2 * t);
      const double c4 = std::cos(4 * t);
      worst = std::max(worst, std::abs(c13 - (c4 + s) / (1 + c4 * s)));
    }
  }
  for (double delta : {kPi / 2, 1.0, 0.3, 0.1, 1e-2, 1e-3}) {
    const NHHamiltonian h = NHHamiltonian::canonical_from_delta(delta);
    const double c13 = correlator(h, up_y_rho(), Observable::canonical(), 0, kPi / 2);
    worst_pin = std::max(worst_pin, std::abs(c13 + 1));
  }
  return {worst <= 1e-8 && worst_pin <= 1e-8,
          fmt("20x20 grid max error %.2e, max |C13(pi/4) + 1| = %.2e (tol 1e-8)", worst,
              worst_pin)};
}

Outcome luder_recovery(ScanCache& cache) {
  const double k0 = cache.k3(0.0).objective;
  const double kn = cache.k3(kPi / 2 - 0.1).objective;
  return {std::abs(k0 - 1.5) <= 1e-3 && kn >= 2.98,
          fmt("K3max(0) = %.6f (1.5 +- 1e-3), K3max(pi/2 - 0.1) = %.6f (>= 2.98)", k0, kn)};
}

Outcome embedding_limit() {
  const double delta = 0.1;
  const Embedding e = Embedding::from_delta(delta);
  const double k = e.k3(PureState::up_y(), Observable::canonical(), 0, kPi / 4, kPi / 2).k3;
  const double target = 3 * (1 - delta * delta / 2);
  return {std::abs(k - target) <= 5e-3,
          fmt("K3 via embedding = %.6f, 3(1 - delta^2/2) = %.6f (tol 5e-3)", k, target)};
}

Outcome embedding_equivalence() {
  double worst_fid = 0, worst_norm = 0;
  for (double theta : {0.0, 0.5, 1.0, 1.4}) {
    const Embedding e = Embedding::from_theta(theta);
    const NHHamiltonian h = e.effective_hamiltonian();
    const PureState psi0 = PureState::up_y();
    const double n_t = e.embed(psi0).n_t;
    for (int j = 1; j <= 50; ++j) {
      const double t = kPi * j / 50.0;
      const PureState direct = evolve_pure(h, psi0, t);
      const PostSelection ps = e.evolve_and_postselect(psi0, t);
      const cplx wedge = direct[0] * ps.state[1] - direct[1] * ps.state[0];
      worst_fid = std::max(worst_fid, std::norm(wedge));  // 1 - fidelity
      const double n = normalization(h, psi0, t);
      worst_norm = std::max(worst_norm, std::abs(ps.p_select * n * n - n_t * n_t));
    }
  }
  return {worst_fid <= 1e-10 && worst_norm <= 1e-10,
          fmt("max (1 - F) = %.2e, max |p N^2 - N_T^2| = %.2e (tol 1e-10)", worst_fid,
              worst_norm)};
}

Outcome dynamics_oracles() {
  double worst_bn = 0, worst_delta = 0, worst_v = 0;
  for (double theta : {0.0, 0.4, 0.8, 1.2, 1.4}) {
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    const Frame f = h.frame();
    const double a = h.effective_a().norm(), b = h.effective_b().norm();
    std::vector<double> grid;
    for (int j = 1; j <= 60; ++j) grid.push_back(kPi * j / 60.0);
    const Trajectory traj = integrate_bloch(PureState::up_y().bloch(), h, 0.0, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Vec3 abn = f.to_frame(traj.states[j]);
      const BnComponents cf = analytic_SB_Sn(a, b, grid[j]);
      worst_bn = std::max({worst_bn, std::abs(abn.y() - cf.s_b), std::abs(abn.z() - cf.s_n)});
    }
    for (int j = 0; j <= 40; ++j) {
      const double t = kPi * j / 40.0;
      const PureState psi = evolve_pure(h, PureState::up_y(), t);
      worst_delta = std::max(worst_delta, std::abs(geodesic_distance(psi, PureState::down_y()) -
                                                   geodesic_distance_closed_form(theta, t)));
      const double v = speed(h, PureState::up_y(), t);
      const double v_cf = speed_closed_form(theta, t);
      worst_v = std::max(worst_v, std::abs(v - v_cf) / v_cf);
    }
  }
  return {worst_bn <= 1e-6 && worst_delta <= 1e-8 && worst_v <= 1e-4,
          fmt("S_B/S_n vs RK %.2e (1e-6), delta %.2e (1e-8), speed rel %.2e (1e-4)", worst_bn,
              worst_delta, worst_v)};
}

Outcome conservation() {
  std::mt19937_64 rng(7);
  double drift = 0, s_a = 0, period = 0;
  for (double theta : {0.3, 0.9, 1.3}) {
    const NHHamiltonian h = NHHamiltonian::canonical(theta);
    const Frame f = h.frame();
    std::vector<double> grid;
    for (int j = 1; j <= 400; ++j) grid.push_back(10 * kPi * j / 400.0);
    for (int k = 0; k < 3; ++k) {
      const Trajectory traj = integrate_bloch(random_state(rng).bloch(), h, 0.0, grid);
      for (const Vec3& s : traj.states) drift = std::max(drift, std::abs(s.norm() - 0.5));
      // S(t + pi) = S(t): grid points 40 apart are one period apart.
      for (std::size_t j = 0; j + 40 < traj.states.size(); ++j)
        period = std::max(period, (traj.states[j + 40] - traj.states[j]).norm());
    }
    // Start inside S_A = 0: a random direction in the B-n plane.
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    const double phi = angle(rng);
    const Vec3 s0 = f.to_cartesian(Vec3(0, 0.5 * std::cos(phi), 0.5 * std::sin(phi)));
    const Trajectory traj = integrate_bloch(s0, h, 0.0, grid);
    for (const Vec3& s : traj.states) s_a = std::max(s_a, std::abs(f.to_frame(s).x()));
  }
  return {drift <= 1e-8 && s_a <= 1e-8 && period <= 1e-6,
          fmt("norm drift %.2e (1e-8), |S_A| %.2e (1e-8), period defect %.2e (1e-6)", drift,
              s_a, period)};
}

Outcome noise_behavior() {
  // kappa = 0 through the noisy propagator against the exact evolution.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> time(0, kPi);
  double worst = 0;
  for (double delta : {kPi / 2, 0.8, 0.2, 1e-3}) {
    const NHHamiltonian h = NHHamiltonian::canonical_from_delta(delta);
    for (int k = 0; k < 50; ++k) {
      const PureState psi = random_state(rng);
      const double t = time(rng);
      const Vec3 exact = evolve_pure(h, psi, t).bloch();
      worst = std::max(worst, (propagate_bloch_linear(h, psi.bloch(), 0.0, t) - exact).norm());
    }
  }
  const auto grid = default_kappa_grid();
  const auto results = k3max_vs_noise(kPi / 2 - 1e-3, grid);
  double rise = 0;
  for (std::size_t i = 1; i < results.size(); ++i)
    rise = std::max(rise, results[i].objective - results[i - 1].objective);
  const double last = results.back().objective;
  return {worst <= 1e-8 && rise <= 1e-3 && last <= 1.01,
          fmt("kappa=0 defect %.2e (1e-8), max increase %.2e (slack 1e-3), "
              "K3max(kappa=%g) = %.6f (<= 1.01), K3max(0) = %.6f",
              worst, std::max(rise, 0.0), grid.back(), last, results.front().objective)};
}

Outcome speed_violation(ScanCache& cache) {
  const std::vector<double> thetas = {0.0, 0.3, 0.6, 0.9, 1.2, 1.47};
  std::vector<double> k3s, vs;
  for (double th : thetas) {
    k3s.push_back(cache.k3(th).objective);
    vs.push_back(cache.speed(th).objective);
  }
  auto ranking = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    return idx;
  };
  double dip = 0;
  for (std::size_t i = 1; i < k3s.size(); ++i) dip = std::max(dip, k3s[i - 1] - k3s[i]);
  const bool same = ranking(k3s) == ranking(vs);
  std::string values;
  for (std::size_t i = 0; i < thetas.size(); ++i)
    values += fmt(" (%.2f: %.4f, %.4g)", thetas[i], k3s[i], vs[i]);
  return {same && dip <= 1e-3,
          fmt("rankings %s, max K3max decrease %.2e (slack 1e-3); theta: K3max, vmax",
              same ? "coincide" : "differ", std::max(dip, 0.0)) +
              values};
}

Outcome trace_vs_geodesic() {
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int k = 0; k < 2000; ++k) {
    const PureState a = random_state(rng), b = random_state(rng);
    const double d = trace_distance(DensityMatrix::from_pure(a).matrix(),
                                    DensityMatrix::from_pure(b).matrix());
    worst = std::max(worst, std::abs(d - std::sin(geodesic_distance(a, b))));
  }
  return {worst <= 1e-10, fmt("max |D - sin(delta)| = %.2e over 2000 pairs (tol 1e-10)", worst)};
}

}  // namespace

std::string criterion_name(int id) {
  static const char* names[] = {"closed-form K3",
                                "C13 pinning",
                                "Luders recovery",
                                "algebraic-maximum approach",
                                "embedding equivalence",
                                "dynamics oracles",
                                "conservation properties",
                                "noise behavior",
                                "speed-violation correlation",
                                "trace vs geodesic distance"};
  if (id < 1 || id > kCriterionCount)
    fail(ErrorCode::kInvalidArgument, "criterion id must lie in 1..10");
  return names[id - 1];
}

std::vector<CriterionResult> run_acceptance(
    const std::vector<int>& ids, const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<int> todo = ids;
  if (todo.empty()) {
    todo.resize(kCriterionCount);
    std::iota(todo.begin(), todo.end(), 1);
  }
  for (int id : todo) criterion_name(id);  // validates
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());

  ScanCache cache;
  std::vector<CriterionResult> out;
  for (int id : todo) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o{false, {}};
      switch (id) {
        case 1: o = closed_form_k3(); break;
        case 2: o = c13_pinning(); break;
        case 3: o = luder_recovery(cache); break;
        case 4: o = embedding_limit(); break;
        case 5: o = embedding_equivalence(); break;
        case 6: o = dynamics_oracles(); break;
        case 7: o = conservation(); break;
        case 8: o = noise_behavior(); break;
        case 9: o = speed_violation(cache); break;
        case 10: o = trace_vs_geodesic(); break;
      }
      r.passed = o.passed;
      r.detail = o.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace nhlgi

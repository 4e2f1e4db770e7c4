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

#include "nhlgi/series.hpp"

#include <cmath>
#include <limits>

#include "nhlgi/embedding.hpp"

namespace nhlgi {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* grid_name(std::span<const ThetaSpec> thetas) {
  return !thetas.empty() && thetas[0].is_delta ? "delta" : "theta";
}

void set_theta_param(Table& t, std::span<const ThetaSpec> thetas) {
  std::vector<double> values;
  for (const auto& th : thetas) values.push_back(th.value);
  t.set_param(grid_name(thetas), values);
}

// Columns with an optional leading grid column.
std::vector<std::string> with_grid(bool grid, const std::string& name,
                                   std::vector<std::string> cols) {
  if (grid) cols.insert(cols.begin(), name);
  return cols;
}

std::vector<double> row_with_grid(bool grid, double g, std::vector<double> row) {
  if (grid) row.insert(row.begin(), g);
  return row;
}

void require_nonempty(std::size_t n, const char* what) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, std::string(what) + " grid is empty");
}

LgiResult canonical_k3(const NHHamiltonian& h, double t1, double t2, double t3, double kappa) {
  return k3(h, DensityMatrix::from_pure(PureState::up_y()), Observable::canonical(), t1, t2,
            t3, kappa);
}

}  // namespace

std::vector<double> time_grid(double tmax, double step, int first) {
  if (!std::isfinite(tmax) || !std::isfinite(step))
    fail(ErrorCode::kNonFinite, "time grid: non-finite tmax or step");
  if (!(step > 0)) fail(ErrorCode::kInvalidArgument, "time grid: step must be > 0");
  if (tmax < 0) fail(ErrorCode::kInvalidArgument, "time grid: tmax must be >= 0");
  const long last = static_cast<long>(std::floor(tmax / step + 1e-9));
  if (last > 50'000'000) fail(ErrorCode::kInvalidArgument, "time grid: too many points");
  std::vector<double> grid;
  for (long i = first; i <= last; ++i) grid.push_back(static_cast<double>(i) * step);
  return grid;
}

double ThetaSpec::theta() const { return is_delta ? kPi / 2 - value : value; }

NHHamiltonian ThetaSpec::hamiltonian(double scale) const {
  if (!std::isfinite(value)) fail(ErrorCode::kNonFinite, "non-finite theta/delta");
  if (is_delta) {
    if (value < kPi / 2 - kThetaMax || value > kPi / 2)
      fail(ErrorCode::kDomain, "delta must lie in [1e-6, pi/2]");
    return NHHamiltonian::canonical_from_delta(value, scale);
  }
  if (value < 0 || value > kThetaMax)
    fail(ErrorCode::kDomain, "theta must lie in [0, pi/2 - 1e-6]");
  return NHHamiltonian::canonical(value, scale);
}

Table trajectory_series(ThetaSpec theta, double kappa, double tmax, double step) {
  const NHHamiltonian h = theta.hamiltonian();
  const auto times = time_grid(tmax, step);
  Table t;
  t.command = "trajectory";
  t.set_param(theta.is_delta ? "delta" : "theta", theta.value);
  t.set_param("kappa", kappa);
  t.set_param("tmax", tmax);
  t.set_param("step", step);
  t.set_param("initial_state", "up_y");
  t.columns = {"t", "S_x", "S_y", "S_z", "S_A", "S_B", "S_n", "purity"};
  const Frame f = h.frame();
  const PureState psi0 = PureState::up_y();
  for (double time : times) {
    const Vec3 s = kappa == 0 ? evolve_pure(h, psi0, time).bloch()
                              : propagate_bloch(h, psi0.bloch(), kappa, time);
    const Vec3 abn = f.to_frame(s);
    t.add_row({time, s.x(), s.y(), s.z(), abn.x(), abn.y(), abn.z(), 0.5 + 2 * s.squaredNorm()});
  }
  return t;
}

Table distance_series(std::span<const ThetaSpec> thetas, double tmax, double step) {
  require_nonempty(thetas.size(), "theta");
  const auto times = time_grid(tmax, step);
  const bool grid = thetas.size() > 1;
  Table t;
  t.command = "distance";
  set_theta_param(t, thetas);
  t.set_param("tmax", tmax);
  t.set_param("step", step);
  t.columns = with_grid(grid, grid_name(thetas),
                        {"t", "delta", "delta_closed_form", "S_n", "S_n_closed_form"});
  for (const auto& th : thetas) {
    const NHHamiltonian h = th.hamiltonian();
    const Frame f = h.frame();
    const double a = h.effective_a().norm(), b = h.effective_b().norm();
    for (double time : times) {
      const PureState psi = evolve_pure(h, PureState::up_y(), time);
      t.add_row(row_with_grid(
          grid, th.value,
          {time, geodesic_distance(psi, PureState::down_y()),
           geodesic_distance_closed_form(th.theta(), time), f.to_frame(psi.bloch()).z(),
           analytic_SB_Sn(a, b, time).s_n}));
    }
  }
  return t;
}

Table distance_rescaled_series(std::span<const ThetaSpec> thetas, double tmax,
                               double step) {
  require_nonempty(thetas.size(), "theta");
  const auto times = time_grid(tmax, step);
  const bool grid = thetas.size() > 1;
  Table t;
  t.command = "distance";
  set_theta_param(t, thetas);
  t.set_param("tmax", tmax);
  t.set_param("step", step);
  t.set_param("hamiltonian", "cos(theta) H_theta");
  t.columns = with_grid(grid, grid_name(thetas), {"t", "delta", "trace_distance"});
  for (const auto& th : thetas) {
    const double scale = th.is_delta ? std::sin(th.value) : std::cos(th.value);
    const NHHamiltonian h = th.hamiltonian(scale);
    for (double time : times) {
      const PureState h_t = evolve_pure(h, PureState::up_z(), time);
      const PureState v_t = evolve_pure(h, PureState::down_z(), time);
      const double d = trace_distance(DensityMatrix::from_pure(h_t).matrix(),
                                      DensityMatrix::from_pure(v_t).matrix());
      t.add_row(row_with_grid(grid, th.value, {time, geodesic_distance(h_t, v_t), d}));
    }
  }
  return t;
}

Table speed_series(std::span<const ThetaSpec> thetas, double tmax, double step) {
  require_nonempty(thetas.size(), "theta");
  const auto times = time_grid(tmax, step);
  const bool grid = thetas.size() > 1;
  Table t;
  t.command = "speed";
  set_theta_param(t, thetas);
  t.set_param("tmax", tmax);
  t.set_param("step", step);
  t.columns = with_grid(grid, grid_name(thetas), {"t", "v", "v_closed_form"});
  for (const auto& th : thetas) {
    const NHHamiltonian h = th.hamiltonian();
    for (double time : times)
      t.add_row(row_with_grid(grid, th.value,
                              {time, speed(h, PureState::up_y(), time),
                               speed_closed_form(th.theta(), time)}));
  }
  return t;
}

Table lgi_series(std::span<const ThetaSpec> thetas, std::span<const double> times,
                 double kappa) {
  require_nonempty(thetas.size(), "theta");
  const bool grid = thetas.size() > 1;
  Table t;
  t.command = "lgi";
  set_theta_param(t, thetas);
  t.set_param("kappa", kappa);
  t.set_param("times", std::vector<double>(times.begin(), times.end()));
  t.set_param("spacing", "t1 = 0, t2 = t, t3 = 2t");
  t.columns = with_grid(grid, grid_name(thetas),
                        {"t", "C12", "C23", "C13", "K3", "K3_closed_form"});
  for (const auto& th : thetas) {
    const NHHamiltonian h = th.hamiltonian();
    for (double time : times) {
      const LgiResult r = canonical_k3(h, 0, time, 2 * time, kappa);
      const double cf = (time > 0 && time <= kPi / 2 + 1e-15 && kappa == 0)
                            ? k3_closed_form(th.theta(), std::min(time, kPi / 2)).k3
                            : kNaN;
      t.add_row(row_with_grid(grid, th.value, {time, r.c12, r.c23, r.c13, r.k3, cf}));
    }
  }
  return t;
}

Table lgi_explicit_series(std::span<const ThetaSpec> thetas, double t1, double t2,
                          double t3, double kappa) {
  require_nonempty(thetas.size(), "theta");
  const bool grid = thetas.size() > 1;
  Table t;
  t.command = "lgi";
  set_theta_param(t, thetas);
  t.set_param("kappa", kappa);
  t.set_param("t1", t1);
  t.set_param("t2", t2);
  t.set_param("t3", t3);
  t.columns = with_grid(grid, grid_name(thetas), {"t1", "t2", "t3", "C12", "C23", "C13", "K3"});
  for (const auto& th : thetas) {
    const LgiResult r = canonical_k3(th.hamiltonian(), t1, t2, t3, kappa);
    t.add_row(row_with_grid(grid, th.value, {t1, t2, t3, r.c12, r.c23, r.c13, r.k3}));
  }
  return t;
}

Table noise_series(ThetaSpec theta, std::span<const double> kappas,
                   std::span<const double> times) {
  require_nonempty(kappas.size(), "kappa");
  const NHHamiltonian h = theta.hamiltonian();
  const bool grid = kappas.size() > 1;
  Table t;
  t.command = "noise";
  t.set_param(theta.is_delta ? "delta" : "theta", theta.value);
  t.set_param("kappa", std::vector<double>(kappas.begin(), kappas.end()));
  t.set_param("times", std::vector<double>(times.begin(), times.end()));
  t.set_param("spacing", "t1 = 0, t2 = t, t3 = 2t");
  t.columns = with_grid(grid, "kappa", {"t", "C12", "C23", "C13", "K3"});
  for (double kappa : kappas)
    for (double time : times) {
      const LgiResult r = canonical_k3(h, 0, time, 2 * time, kappa);
      t.add_row(row_with_grid(grid, kappa, {time, r.c12, r.c23, r.c13, r.k3}));
    }
  return t;
}

Table embed_series(ThetaSpec theta, std::span<const double> times) {
  const Embedding e =
      theta.is_delta ? Embedding::from_delta(theta.value) : Embedding::from_theta(theta.value);
  const NHHamiltonian h = e.effective_hamiltonian();
  const PureState psi0 = PureState::up_y();
  const double n_t = e.embed(psi0).n_t;
  Table t;
  t.command = "embed";
  t.set_param(theta.is_delta ? "delta" : "theta", theta.value);
  t.set_param("times", std::vector<double>(times.begin(), times.end()));
  t.columns = {"t", "infidelity", "p_select", "N_T", "identity_defect", "K3_direct",
               "K3_embedded"};
  for (double time : times) {
    const PureState direct = evolve_pure(h, psi0, time);
    const PostSelection ps = e.evolve_and_postselect(psi0, time);
    const cplx wedge = direct[0] * ps.state[1] - direct[1] * ps.state[0];
    const double n = normalization(h, psi0, time);
    double k3_direct = kNaN, k3_embedded = kNaN;
    if (time > 0) {
      k3_direct = canonical_k3(h, 0, time, 2 * time, 0).k3;
      k3_embedded = e.k3(psi0, Observable::canonical(), 0, time, 2 * time).k3;
    }
    t.add_row({time, std::norm(wedge), ps.p_select, n_t,
               std::abs(ps.p_select * n * n - n_t * n_t), k3_direct, k3_embedded});
  }
  return t;
}

Table scan_series(std::span<const double> thetas, const ScanConfig& config) {
  require_nonempty(thetas.size(), "theta");
  Table t;
  t.command = "scan";
  t.seed = config.seed;
  t.set_param("theta", std::vector<double>(thetas.begin(), thetas.end()));
  t.set_param("budget", static_cast<double>(config.budget));
  t.set_param("restarts", static_cast<double>(config.restarts));
  t.columns = {"theta", "K3max", "vmax", "K3_canonical", "v_canonical", "evals_K3", "evals_v"};
  std::vector<ScanResult> speeds;
  for (double theta : thetas) {
    const ScanResult rk = maximize_k3(theta, 0, config);
    const ScanResult rv = maximize_speed(theta, config);
    const double s = std::sin(theta);
    t.add_row({theta, rk.objective, rv.objective, 1 + s + s * s, (1 + s) / (1 - s),
               static_cast<double>(rk.evals), static_cast<double>(rv.evals)});
    t.results.push_back(rk);
    speeds.push_back(rv);
  }
  t.results.insert(t.results.end(), speeds.begin(), speeds.end());
  return t;
}

Table noisescan_series(ThetaSpec theta, std::span<const double> kappas,
                       const ScanConfig& config) {
  require_nonempty(kappas.size(), "kappa");
  const double th = theta.theta();
  Table t;
  t.command = "noisescan";
  t.seed = config.seed;
  t.set_param(theta.is_delta ? "delta" : "theta", theta.value);
  t.set_param("kappa", std::vector<double>(kappas.begin(), kappas.end()));
  t.set_param("budget", static_cast<double>(config.budget));
  t.set_param("restarts", static_cast<double>(config.restarts));
  t.columns = {"kappa", "kappa_bar", "K3max", "evals", "theta_s", "phi_s",
               "theta_q", "phi_q", "t1",        "t2",    "t3"};
  t.results = k3max_vs_noise(th, kappas, config);
  for (const auto& r : t.results) {
    std::vector<double> row = {r.kappa, 1e5 * r.kappa, r.objective,
                               static_cast<double>(r.evals)};
    row.insert(row.end(), r.argmax.begin(), r.argmax.end());
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace nhlgi

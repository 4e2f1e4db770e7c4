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

#include "nhlgi/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

namespace nhlgi {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTimeWindow = kPi;  // one period of H_theta

const std::vector<std::string>& k3_names() {
  static const std::vector<std::string> names = {"theta_s", "phi_s", "theta_q", "phi_q",
                                                 "t1",      "t2",    "t3"};
  return names;
}

const std::vector<std::string>& speed_names() {
  static const std::vector<std::string> names = {"theta_s", "phi_s", "t"};
  return names;
}

double fold(double x) {
  double y = std::fmod(std::abs(x), 2.0);
  return y <= 1.0 ? y : 2.0 - y;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

using Objective = std::function<double(std::span<const double>)>;

// Evaluates on folded coordinates; numerical failures count as infeasible.
double safe_eval(const Objective& f, std::span<const double> x) {
  std::vector<double> u(x.begin(), x.end());
  for (double& v : u) v = fold(v);
  try {
    const double value = f(u);
    return std::isfinite(value) ? value : kNegInf;
  } catch (const Error&) {
    return kNegInf;
  }
}

struct SearchOutcome {
  std::vector<double> best_u;
  double best_f = kNegInf;
  long evals = 0;
  int runs = 0;
};

SearchOutcome run_search(int dim, const Objective& f,
                         const std::vector<std::vector<double>>& extra_starts,
                         const ScanConfig& cfg) {
  if (cfg.restarts < 1 || cfg.lhs_points < 1 || !(cfg.simplex_tol > 0))
    fail(ErrorCode::kConfig, "scan: restarts, lhs_points and simplex_tol must be positive");
  const long min_run = 10L * (dim + 1);
  if (cfg.budget < cfg.lhs_points + min_run)
    fail(ErrorCode::kConfig,
         "scan: evaluation budget too small to complete one simplex restart");

  const int threads = resolve_threads(cfg.threads);

  // Latin-hypercube seeding.
  const auto sample = latin_hypercube(cfg.lhs_points, dim, cfg.seed);
  std::vector<double> values(sample.size());
  parallel_for(sample.size(), threads,
               [&](std::size_t i) { values[i] = safe_eval(f, sample[i]); });
  std::vector<std::size_t> order(sample.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  std::vector<std::vector<double>> starts = extra_starts;
  for (int k = 0; k < cfg.restarts && k < static_cast<int>(order.size()); ++k)
    starts.push_back(sample[order[k]]);

  long remaining = cfg.budget - cfg.lhs_points;
  const long per_run = remaining / static_cast<long>(starts.size());
  if (per_run < min_run)
    fail(ErrorCode::kConfig,
         "scan: evaluation budget too small to complete one simplex restart");

  std::vector<NelderMeadResult> runs(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t r) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(r + 1)));
    std::normal_distribution<double> normal(0.0, 1.0);
    auto g = [&](std::span<const double> x) { return safe_eval(f, x); };
    NelderMeadResult best;
    best.best_x = starts[r];
    best.best_f = g(starts[r]);
    best.evals = 1;
    // After a pass stalls, restart from a kicked copy of the incumbent with a
    // growing kick size; an improvement resets the cycle. Runs until the
    // share of the budget is spent.
    static constexpr double kKicks[] = {0.0, 0.02, 0.05, 0.1, 0.2, 0.4};
    std::size_t kick = 0;
    std::vector<double> x0(best.best_x.size());
    while (per_run - best.evals > min_run) {
      const double sigma = kKicks[kick];
      for (std::size_t i = 0; i < x0.size(); ++i)
        x0[i] = fold(best.best_x[i] + sigma * normal(rng));
      const double step = std::max(0.05, sigma);
      NelderMeadResult pass =
          nelder_mead_maximize(g, x0, step, cfg.simplex_tol, per_run - best.evals);
      best.evals += pass.evals;
      if (pass.best_f > best.best_f + cfg.simplex_tol) {
        kick = 0;
      } else {
        kick = kick + 1 < std::size(kKicks) ? kick + 1 : 1;
      }
      if (pass.best_f > best.best_f) {
        best.best_f = pass.best_f;
        best.best_x = pass.best_x;
        for (double& v : best.best_x) v = fold(v);
      }
    }
    runs[r] = std::move(best);
  });

  SearchOutcome out;
  out.runs = static_cast<int>(starts.size());
  out.evals = cfg.lhs_points;
  out.best_u = sample[order[0]];
  out.best_f = values[order[0]];
  for (const auto& run : runs) {
    out.evals += run.evals;
    if (run.best_f > out.best_f) {
      out.best_f = run.best_f;
      out.best_u = run.best_x;
    }
  }
  for (double& v : out.best_u) v = fold(v);
  return out;
}

void check_theta(double theta, const char* where) {
  if (!std::isfinite(theta) || theta < 0 || theta > kThetaMax)
    fail(ErrorCode::kDomain, std::string(where) + ": theta must lie in [0, pi/2 - 1e-6]");
}

Vec3 direction(double polar, double azimuth) {
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

}  // namespace

double ScanResult::arg(const std::string& name) const {
  for (std::size_t i = 0; i < argmax_names.size(); ++i)
    if (argmax_names[i] == name) return argmax[i];
  fail(ErrorCode::kInvalidArgument, "ScanResult: unknown coordinate " + name);
}

int resolve_threads(int requested) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("NHLGI_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(n, 1);
}

K3Point k3_point_from_unit(std::span<const double> u) {
  if (u.size() != 7) fail(ErrorCode::kInvalidArgument, "k3_point_from_unit: need 7 coordinates");
  K3Point p;
  p.theta_s = kPi * u[0];
  p.phi_s = 2 * kPi * u[1];
  p.theta_q = kPi * u[2];
  p.phi_q = 2 * kPi * u[3];
  p.t1 = kTimeWindow * u[4];
  p.t2 = p.t1 + (kTimeWindow - p.t1) * u[5] * u[5] * u[5];
  p.t3 = p.t2 + (kTimeWindow - p.t2) * u[6] * u[6] * u[6];
  return p;
}

std::vector<double> unit_from_k3_point(const K3Point& p) {
  auto ratio = [](double num, double den) { return den > 0 ? num / den : 0.0; };
  return {p.theta_s / kPi,
          p.phi_s / (2 * kPi),
          p.theta_q / kPi,
          p.phi_q / (2 * kPi),
          p.t1 / kTimeWindow,
          std::cbrt(ratio(p.t2 - p.t1, kTimeWindow - p.t1)),
          std::cbrt(ratio(p.t3 - p.t2, kTimeWindow - p.t2))};
}

NelderMeadResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
    double step, double tol, long budget) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(n);
  // Dimension-adapted coefficients (Gao & Han).
  const double alpha = 1.0, gamma = 1.0 + 2.0 / dn;
  const double rho = 0.75 - 1.0 / (2.0 * dn), sigma = 1.0 - 1.0 / dn;

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evals;
    return -f(x);  // minimize the negative
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> val(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) val[i] = eval(pts[i]);

  std::vector<std::size_t> idx(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  while (res.evals + 2 <= budget) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
    const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];

    double diameter = 0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(pts[idx[i]][k] - pts[best][k]));
    const bool flat = !std::isfinite(val[worst]) ? false : val[worst] - val[best] <= tol;
    if (flat && diameter <= std::sqrt(tol)) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[idx[i]][k] / dn;

    for (std::size_t k = 0; k < n; ++k)
      xr[k] = centroid[k] + alpha * (centroid[k] - pts[worst][k]);
    const double fr = eval(xr);

    if (fr < val[best]) {
      for (std::size_t k = 0; k < n; ++k) xe[k] = centroid[k] + gamma * (xr[k] - centroid[k]);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        val[worst] = fe;
      } else {
        pts[worst] = xr;
        val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = xr;
      val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    for (std::size_t k = 0; k < n; ++k)
      xc[k] = outside ? centroid[k] + rho * (xr[k] - centroid[k])
                      : centroid[k] - rho * (centroid[k] - pts[worst][k]);
    const double fc = eval(xc);
    if (fc < (outside ? fr : val[worst])) {
      pts[worst] = xc;
      val[worst] = fc;
      continue;
    }
    // Shrink towards the best vertex.
    if (res.evals + static_cast<long>(n) > budget) break;
    for (std::size_t i = 1; i <= n; ++i) {
      auto& p = pts[idx[i]];
      for (std::size_t k = 0; k < n; ++k) p[k] = pts[best][k] + sigma * (p[k] - pts[best][k]);
      val[idx[i]] = eval(p);
    }
  }

  const auto it = std::min_element(val.begin(), val.end());
  res.best_x = pts[static_cast<std::size_t>(it - val.begin())];
  res.best_f = -*it;
  return res;
}

std::vector<std::vector<double>> latin_hypercube(int n, int dim, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  std::vector<int> perm(n);
  for (int d = 0; d < dim; ++d) {
    std::iota(perm.begin(), perm.end(), 0);
    // Fisher-Yates with the engine directly; std::shuffle's output is not
    // specified across standard libraries.
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(perm[i], perm[j]);
    }
    for (int i = 0; i < n; ++i) pts[i][d] = (perm[i] + unit(rng)) / n;
  }
  return pts;
}

ScanResult maximize_k3(double theta, double kappa, const ScanConfig& config) {
  check_theta(theta, "maximize_k3");
  if (!std::isfinite(kappa) || kappa < 0)
    fail(ErrorCode::kInvalidArgument, "maximize_k3: kappa must be >= 0");
  const NHHamiltonian h = NHHamiltonian::canonical(theta);
  const Objective f = [&](std::span<const double> u) {
    const K3Point p = k3_point_from_unit(u);
    return k3_value(h, 0.5 * direction(p.theta_s, p.phi_s), direction(p.theta_q, p.phi_q),
                    p.t1, p.t2, p.t3, kappa);
  };
  // up_y and q = -y_hat at t = 0, pi/4, pi/2.
  const K3Point canonical{kPi / 2, 1.5 * kPi, kPi / 2, 1.5 * kPi, 0.0, kPi / 4, kPi / 2};
  const SearchOutcome out = run_search(7, f, {unit_from_k3_point(canonical)}, config);

  ScanResult r;
  r.objective_kind = ScanObjective::kK3;
  r.theta = theta;
  r.kappa = kappa;
  r.objective = out.best_f;
  const K3Point p = k3_point_from_unit(out.best_u);
  r.argmax_names = k3_names();
  r.argmax = {p.theta_s, p.phi_s, p.theta_q, p.phi_q, p.t1, p.t2, p.t3};
  r.evals = out.evals;
  r.restarts = out.runs;
  r.seed = config.seed;
  return r;
}

ScanResult maximize_speed(double theta, const ScanConfig& config) {
  check_theta(theta, "maximize_speed");
  const NHHamiltonian h = NHHamiltonian::canonical(theta);
  const Objective f = [&](std::span<const double> u) {
    return speed(h, PureState::from_angles(kPi * u[0], 2 * kPi * u[1]), kTimeWindow * u[2]);
  };
  // up_y at t = pi/2, where the S_A = 0 closed form peaks.
  const SearchOutcome out = run_search(3, f, {{0.5, 0.75, 0.5}}, config);

  ScanResult r;
  r.objective_kind = ScanObjective::kSpeed;
  r.theta = theta;
  r.kappa = 0;
  r.objective = out.best_f;
  r.argmax_names = speed_names();
  r.argmax = {kPi * out.best_u[0], 2 * kPi * out.best_u[1], kTimeWindow * out.best_u[2]};
  r.evals = out.evals;
  r.restarts = out.runs;
  r.seed = config.seed;
  return r;
}

std::vector<ScanResult> k3max_vs_noise(double theta, std::span<const double> kappas,
                                       const ScanConfig& config) {
  check_theta(theta, "k3max_vs_noise");
  if (kappas.empty()) fail(ErrorCode::kInvalidArgument, "k3max_vs_noise: empty kappa grid");
  for (double k : kappas)
    if (!std::isfinite(k) || k < 0)
      fail(ErrorCode::kInvalidArgument, "k3max_vs_noise: kappa must be >= 0");

  std::vector<ScanResult> results;
  results.reserve(kappas.size());
  for (double k : kappas) results.push_back(maximize_k3(theta, k, config));

  // Offer every grid point the maximizers found for the others; when one of
  // them wins, polish it with a short simplex run.
  const NHHamiltonian h = NHHamiltonian::canonical(theta);
  const std::vector<ScanResult> first = results;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double kappa = kappas[i];
    const Objective f = [&](std::span<const double> u) {
      const K3Point p = k3_point_from_unit(u);
      return k3_value(h, 0.5 * direction(p.theta_s, p.phi_s), direction(p.theta_q, p.phi_q),
                      p.t1, p.t2, p.t3, kappa);
    };
    auto g = [&](std::span<const double> x) { return safe_eval(f, x); };
    std::vector<double> best_u;
    for (std::size_t j = 0; j < first.size(); ++j) {
      if (i == j) continue;
      const auto& a = first[j].argmax;
      const auto u = unit_from_k3_point({a[0], a[1], a[2], a[3], a[4], a[5], a[6]});
      const double value = g(u);
      ++results[i].evals;
      if (value > results[i].objective) {
        results[i].objective = value;
        best_u = u;
      }
    }
    if (best_u.empty()) continue;
    const NelderMeadResult polish = nelder_mead_maximize(
        g, best_u, 0.02, config.simplex_tol, std::max(100L, config.budget / 20));
    results[i].evals += polish.evals;
    if (polish.best_f > results[i].objective) {
      results[i].objective = polish.best_f;
      best_u = polish.best_x;
    }
    for (double& v : best_u) v = fold(v);
    const K3Point p = k3_point_from_unit(best_u);
    results[i].argmax = {p.theta_s, p.phi_s, p.theta_q, p.phi_q, p.t1, p.t2, p.t3};
  }
  return results;
}

std::vector<double> default_kappa_grid() {
  std::vector<double> grid = {0.0};
  for (int e = -8; e <= 4; ++e) grid.push_back(std::pow(10.0, e));
  return grid;
}

}  // namespace nhlgi

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

// Derivative-free maximization of K3 and of the evolution speed over initial
// states, observables and measurement times for the canonical family H_theta.
//
// Search coordinates live in the unit cube; points outside it are folded back
// (triangle wave), so the simplex moves freely. Times use one period [0, pi]:
//   t1 = pi u4,  t2 = t1 + (pi - t1) u5^3,  t3 = t2 + (pi - t2) u6^3.
// The cubes resolve the short gaps that dominate near the exceptional point.

#ifndef NHLGI_SCAN_HPP
#define NHLGI_SCAN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nhlgi/lgi.hpp"

namespace nhlgi {

struct ScanConfig {
  long budget = 200'000;      // objective evaluations, including seeding
  std::uint64_t seed = 1;
  int restarts = 16;
  double simplex_tol = 1e-8;
  int lhs_points = 512;       // Latin-hypercube seeding sample
  int threads = 0;            // 0: NHLGI_THREADS or hardware concurrency
};

enum class ScanObjective { kK3, kSpeed };

struct ScanResult {
  ScanObjective objective_kind = ScanObjective::kK3;
  double theta = 0;
  double kappa = 0;
  double objective = 0;
  /// Named coordinates of the best evaluated point: theta_s, phi_s, theta_q,
  /// phi_q, t1, t2, t3 for K3; theta_s, phi_s, t for speed.
  std::vector<std::string> argmax_names;
  std::vector<double> argmax;
  long evals = 0;
  int restarts = 0;
  std::uint64_t seed = 0;

  double arg(const std::string& name) const;
};

/// Worker count honoring NHLGI_THREADS.
int resolve_threads(int requested);

/// Multi-start Nelder-Mead maximization of K3 over the 7-parameter space.
/// theta in [0, pi/2 - 1e-6], kappa >= 0. Deterministic for a fixed config.
/// The canonical configuration is always among the starting points, so the
/// result is never below 1 + sin(theta) + sin^2(theta) for kappa = 0.
ScanResult maximize_k3(double theta, double kappa, const ScanConfig& config = {});

/// Same machinery for speed() over initial state and one time t in [0, pi].
ScanResult maximize_speed(double theta, const ScanConfig& config = {});

/// maximize_k3 on every kappa of the grid (kappa >= 0), with the argmax of
/// each grid point offered as an extra start to the others.
std::vector<ScanResult> k3max_vs_noise(double theta, std::span<const double> kappas,
                                       const ScanConfig& config = {});

/// Default kappa grid: 0 followed by a log-spaced range.
std::vector<double> default_kappa_grid();

/// Maps a unit-cube point to (initial Bloch vector, observable, t1, t2, t3).
struct K3Point {
  double theta_s, phi_s, theta_q, phi_q, t1, t2, t3;
};
K3Point k3_point_from_unit(std::span<const double> u);
std::vector<double> unit_from_k3_point(const K3Point& p);

// Generic optimizer pieces, exposed for testing.

struct NelderMeadResult {
  std::vector<double> best_x;
  double best_f = 0;
  long evals = 0;
};

/// Maximizes f starting from a simplex of edge `step` around x0, until the
/// spread of simplex values and its diameter both fall below tol, or the
/// evaluation budget runs out.
NelderMeadResult nelder_mead_maximize(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x0, double step, double tol, long budget);

/// n points of a Latin hypercube in [0,1]^dim.
std::vector<std::vector<double>> latin_hypercube(int n, int dim, std::uint64_t seed);

}  // namespace nhlgi

#endif  // NHLGI_SCAN_HPP

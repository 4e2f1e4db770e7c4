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

// Plot-ready data series. The initial state is |up>_y and the observable
// Q = -sigma_y throughout, as in the canonical protocol. When a grid argument
// has more than one value, its column is prepended to every row.

#ifndef NHLGI_SERIES_HPP
#define NHLGI_SERIES_HPP

#include <span>
#include <vector>

#include "nhlgi/table.hpp"

namespace nhlgi {

/// i * step for i = first .. floor(tmax/step + 1e-9). first is 0 or 1.
/// Requires step > 0 and tmax >= 0.
std::vector<double> time_grid(double tmax, double step, int first = 0);

/// H_theta parameterized by delta = pi/2 - theta (small delta stays exact).
struct ThetaSpec {
  double value = 0;
  bool is_delta = false;
  double theta() const;
  NHHamiltonian hamiltonian(double scale = 1.0) const;
};

/// Bloch trajectory: t, S_x, S_y, S_z, S_A, S_B, S_n, purity.
Table trajectory_series(ThetaSpec theta, double kappa, double tmax, double step);

/// Geodesic distance to |down>_y and S_n: t, delta, delta_closed_form, S_n,
/// S_n_closed_form.
Table distance_series(std::span<const ThetaSpec> thetas, double tmax, double step);

/// Under cos(theta) H_theta, the evolved |H> = (1,0) and |V> = (0,1):
/// t, delta (geodesic), trace_distance.
Table distance_rescaled_series(std::span<const ThetaSpec> thetas, double tmax,
                               double step);

/// t, v, v_closed_form.
Table speed_series(std::span<const ThetaSpec> thetas, double tmax, double step);

/// Equal spacing t1 = 0, t2 = t, t3 = 2t:
/// t, C12, C23, C13, K3, K3_closed_form (nan outside t in (0, pi/2]).
Table lgi_series(std::span<const ThetaSpec> thetas, std::span<const double> times,
                 double kappa);

/// Explicit times: t1, t2, t3, C12, C23, C13, K3.
Table lgi_explicit_series(std::span<const ThetaSpec> thetas, double t1, double t2,
                          double t3, double kappa);

/// K3(t) at equal spacing for each kappa: t, C12, C23, C13, K3.
Table noise_series(ThetaSpec theta, std::span<const double> kappas,
                   std::span<const double> times);

/// Embedding report: t, infidelity, p_select, N_T, identity_defect, K3_direct,
/// K3_embedded. identity_defect = |p_select N(t)^2 - N_T^2|; the K3 columns
/// use equal spacing t.
Table embed_series(ThetaSpec theta, std::span<const double> times);

/// theta, K3max, vmax, K3_canonical, v_canonical, evals_K3, evals_v.
Table scan_series(std::span<const double> thetas, const ScanConfig& config);

/// kappa, kappa_bar (= 1e5 kappa), K3max, evals and the argmax coordinates.
Table noisescan_series(ThetaSpec theta, std::span<const double> kappas,
                       const ScanConfig& config);

}  // namespace nhlgi

#endif  // NHLGI_SERIES_HPP

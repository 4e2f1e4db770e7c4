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

// Adaptive Dormand-Prince 5(4) integrator with the 4th-order continuous
// extension, for small fixed-size real systems.

#ifndef NHLGI_ODE_HPP
#define NHLGI_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <sstream>

#include "nhlgi/error.hpp"

namespace nhlgi::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 50'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
  long rhs_calls = 0;
};

namespace detail {

// Butcher tableau.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                        a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113,
                        a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
// 5th minus embedded 4th order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                        e7 = -1.0 / 40;
// Continuous extension.
inline constexpr double d1 = -12715105075.0 / 11282082432,
                        d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072,
                        d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844,
                        d7 = 69997945.0 / 29380423;

}  // namespace detail

/// Integrates y' = rhs(t, y) from t0 with initial value y0 and reports the
/// solution at every entry of `times` (non-decreasing, all >= t0) through
/// `sink(index, state)`. Throws StiffnessError when the step size underflows.
template <std::size_t N, typename Rhs, typename Sink>
Stats integrate(Rhs&& rhs, double t0, const State<N>& y0,
                std::span<const double> times, Sink&& sink,
                const Options& opt = {}) {
  using namespace detail;
  Stats stats;
  if (times.empty()) return stats;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < t0 ||
        (i > 0 && times[i] < times[i - 1]))
      fail(ErrorCode::kInvalidArgument,
           "ode::integrate: output times must be finite, non-decreasing and >= t0");
  }

  auto call = [&](double t, const State<N>& y) {
    ++stats.rhs_calls;
    return rhs(t, y);
  };

  const double t_end = times.back();
  std::size_t next = 0;
  while (next < times.size() && times[next] == t0) sink(next++, y0);
  if (next == times.size()) return stats;

  State<N> y = y0;
  State<N> k1 = call(t0, y);
  double t = t0;

  // Initial step guess (Hairer & Wanner, II.4).
  double h;
  {
    double d0 = 0, dd1 = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      dd1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    dd1 = std::sqrt(dd1 / N);
    h = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
    h = std::min({h, t_end - t0, opt.max_step});
  }

  State<N> k2, k3, k4, k5, k6, k7, ytmp, ynew;
  while (next < times.size()) {
    if (stats.accepted + stats.rejected > opt.max_steps) {
      std::ostringstream msg;
      msg << "ode::integrate: step budget exhausted at t=" << t;
      throw StiffnessError(t, msg.str());
    }
    const double h_min = 16.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(t), 1.0);
    if (h < h_min) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "ode::integrate: step size underflow at t=" << t
          << " (problem too stiff for rtol=" << opt.rtol << ")";
      throw StiffnessError(t, msg.str());
    }
    if (t + h > t_end) h = t_end - t;

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    k2 = call(t + c2 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = call(t + c3 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = call(t + c4 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = call(t + c5 * h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    k6 = call(t + h, ytmp);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                            a75 * k5[i] + a76 * k6[i]);
    k7 = call(t + h, ynew);

    double err = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / N);
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      ++stats.accepted;
      const double t_new = (h == t_end - t) ? t_end : t + h;
      // Emit every requested time inside (t, t_new].
      if (next < times.size() && times[next] <= t_new) {
        State<N> r2, r3, r4, r5;
        for (std::size_t i = 0; i < N; ++i) {
          const double ydiff = ynew[i] - y[i];
          const double bspl = h * k1[i] - ydiff;
          r2[i] = ydiff;
          r3[i] = bspl;
          r4[i] = ydiff - h * k7[i] - bspl;
          r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                       d6 * k6[i] + d7 * k7[i]);
        }
        while (next < times.size() && times[next] <= t_new) {
          if (times[next] == t_new) {
            sink(next, ynew);
          } else {
            const double s = (times[next] - t) / h;
            const double s1 = 1.0 - s;
            State<N> out;
            for (std::size_t i = 0; i < N; ++i)
              out[i] = y[i] + s * (r2[i] + s1 * (r3[i] + s * (r4[i] + s1 * r5[i])));
            sink(next, out);
          }
          ++next;
        }
      }
      t = t_new;
      y = ynew;
      k1 = k7;
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h = std::min(h * fac, opt.max_step);
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return stats;
}

/// Integrates to a single end time and returns the final state.
template <std::size_t N, typename Rhs>
State<N> integrate_to(Rhs&& rhs, double t0, const State<N>& y0, double t1,
                      const Options& opt = {}, Stats* stats = nullptr) {
  State<N> out = y0;
  const double times[1] = {t1};
  Stats s = integrate<N>(rhs, t0, y0, std::span<const double>(times, 1),
                         [&](std::size_t, const State<N>& y) { out = y; }, opt);
  if (stats) *stats = s;
  return out;
}

}  // namespace nhlgi::ode

#endif  // NHLGI_ODE_HPP

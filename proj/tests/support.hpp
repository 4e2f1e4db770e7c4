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

#ifndef NHLGI_TESTS_SUPPORT_HPP
#define NHLGI_TESTS_SUPPORT_HPP

#include <random>

#include "nhlgi/dynamics.hpp"

namespace nhlgi::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20260418);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx random_cplx() { return {uniform(-1, 1), uniform(-1, 1)}; }

inline CMat2 random_cmat2() {
  CMat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = random_cplx();
  return m;
}

inline PureState random_pure() {
  return PureState::from_angles(uniform(0, kPi), uniform(0, 2 * kPi));
}

inline Vec3 random_unit() {
  const double polar = std::acos(uniform(-1, 1));
  const double azimuth = uniform(0, 2 * kPi);
  return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth),
          std::cos(polar)};
}

// Plain power series with many terms, used only as an oracle at small norm.
template <typename Mat>
Mat series_exp(const Mat& m, int terms) {
  Mat result = Mat::Identity();
  Mat term = Mat::Identity();
  for (int k = 1; k <= terms; ++k) {
    term = term * m / static_cast<double>(k);
    result += term;
  }
  return result;
}

// Unitary distance up to a global phase.
inline double phase_distance(const CVec2& a, const CVec2& b) {
  return 1.0 - std::norm(a.dot(b));
}

}  // namespace nhlgi::testing

#endif  // NHLGI_TESTS_SUPPORT_HPP

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

// Exercises the shared library through its C interface only.

#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "nhlgi/nhlgi.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Ham {
  nhlgi_hamiltonian* h = nullptr;
  ~Ham() { nhlgi_hamiltonian_destroy(h); }
};

struct Tab {
  nhlgi_table* t = nullptr;
  ~Tab() { nhlgi_table_destroy(t); }
};

nhlgi_scan_config small_config() {
  nhlgi_scan_config c;
  nhlgi_scan_config_default(&c);
  c.budget = 3000;
  c.restarts = 2;
  c.lhs_points = 64;
  c.threads = 1;
  c.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(nhlgi_version()).size() > 0);
  CHECK(std::string(nhlgi_status_name(NHLGI_OK)) == "ok");
  CHECK(std::string(nhlgi_status_name(NHLGI_ERR_DOMAIN)).size() > 0);
}

TEST_CASE("hamiltonian handles") {
  Ham h;
  REQUIRE(nhlgi_hamiltonian_canonical(kPi / 6, 1.0, &h.h) == NHLGI_OK);
  double gap = 0;
  CHECK(nhlgi_hamiltonian_gap(h.h, &gap) == NHLGI_OK);
  CHECK(gap == doctest::Approx(1.0));

  Ham bad;
  CHECK(nhlgi_hamiltonian_canonical(2.0, 1.0, &bad.h) == NHLGI_ERR_DOMAIN);
  CHECK(bad.h == nullptr);
  CHECK(std::string(nhlgi_last_error()).find("theta") != std::string::npos);

  const double a[3] = {1, 0, 0}, b[3] = {0, 2, 0};
  CHECK(nhlgi_hamiltonian_create(a, b, 1.0, &bad.h) == NHLGI_ERR_DOMAIN);
  CHECK(nhlgi_hamiltonian_gap(nullptr, &gap) == NHLGI_ERR_INVALID_ARGUMENT);
  CHECK(nhlgi_hamiltonian_canonical(0.3, 1.0, nullptr) == NHLGI_ERR_INVALID_ARGUMENT);
  nhlgi_hamiltonian_destroy(nullptr);
}

TEST_CASE("propagation and speed") {
  Ham h;
  REQUIRE(nhlgi_hamiltonian_canonical_delta(0.5, 1.0, &h.h) == NHLGI_OK);
  const double s0[3] = {0, -0.5, 0};
  double s[3];
  REQUIRE(nhlgi_propagate_bloch(h.h, s0, 0.0, kPi / 2, s) == NHLGI_OK);
  // Every canonical trajectory reaches |down_y> at t = pi/2.
  CHECK(s[1] == doctest::Approx(0.5));
  REQUIRE(nhlgi_propagate_bloch(h.h, s0, 0.3, 1.0, s) == NHLGI_OK);
  CHECK(std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) < 0.5);
  CHECK(nhlgi_propagate_bloch(h.h, s0, -1.0, 1.0, s) == NHLGI_ERR_INVALID_ARGUMENT);

  Ham h0;
  REQUIRE(nhlgi_hamiltonian_canonical(0.0, 1.0, &h0.h) == NHLGI_OK);
  double v = 0;
  REQUIRE(nhlgi_speed(h0.h, kPi / 2, 1.5 * kPi, 0.7, &v) == NHLGI_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("K3 through the C interface") {
  nhlgi_lgi_result r;
  REQUIRE(nhlgi_k3_closed_form(kPi / 6, kPi / 4, &r) == NHLGI_OK);
  CHECK(r.k3 == doctest::Approx(1.75));

  Ham h;
  REQUIRE(nhlgi_hamiltonian_canonical(kPi / 6, 1.0, &h.h) == NHLGI_OK);
  const double bloch[3] = {0, -0.5, 0}, q[3] = {0, -1, 0};
  REQUIRE(nhlgi_k3(h.h, bloch, q, 0, kPi / 4, kPi / 2, 0.0, &r) == NHLGI_OK);
  CHECK(r.c12 == doctest::Approx(0.5));
  CHECK(r.c23 == doctest::Approx(0.25));
  CHECK(r.c13 == doctest::Approx(-1.0));
  CHECK(r.k3 == doctest::Approx(1.75));
  CHECK(r.p12[0] == doctest::Approx(0.75));
  CHECK(r.p13[1] == doctest::Approx(1.0));

  REQUIRE(nhlgi_k3_embedding(0.1, q, 0, kPi / 4, kPi / 2, &r) == NHLGI_OK);
  CHECK(std::abs(r.k3 - 2.985) < 5e-3);
  CHECK(nhlgi_k3_embedding(0.0, q, 0, kPi / 4, kPi / 2, &r) == NHLGI_ERR_DOMAIN);

  CHECK(nhlgi_k3(h.h, bloch, q, 1.0, 0.5, 2.0, 0.0, &r) == NHLGI_ERR_INVALID_ARGUMENT);
  const double bad_q[3] = {0, 0, 2};
  CHECK(nhlgi_k3(h.h, bloch, bad_q, 0, 1, 2, 0.0, &r) == NHLGI_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scans through the C interface") {
  const nhlgi_scan_config c = small_config();
  nhlgi_scan_result r;
  REQUIRE(nhlgi_maximize_k3(0.8, 0.0, &c, &r) == NHLGI_OK);
  CHECK(r.n_args == 7);
  CHECK(r.objective >= 1 + std::sin(0.8) + std::pow(std::sin(0.8), 2) - 1e-12);
  CHECK(r.evals <= c.budget);
  nhlgi_scan_result again;
  REQUIRE(nhlgi_maximize_k3(0.8, 0.0, &c, &again) == NHLGI_OK);
  CHECK(again.objective == r.objective);

  REQUIRE(nhlgi_maximize_speed(0.0, &c, &r) == NHLGI_OK);
  CHECK(r.n_args == 3);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-4));

  nhlgi_scan_config tiny = c;
  tiny.budget = 10;
  CHECK(nhlgi_maximize_k3(0.8, 0.0, &tiny, &r) == NHLGI_ERR_CONFIG);

  double grid[32];
  const size_t n = nhlgi_default_kappa_grid(grid, 32);
  CHECK(n >= 2);
  CHECK(grid[0] == 0.0);
  CHECK(nhlgi_default_kappa_grid(nullptr, 0) == n);

  const double kappas[2] = {0.0, 100.0};
  nhlgi_scan_result out[2];
  REQUIRE(nhlgi_k3max_vs_noise(1.0, kappas, 2, &c, out) == NHLGI_OK);
  CHECK(out[1].kappa == 100.0);
  CHECK(out[0].objective >= out[1].objective);
}

TEST_CASE("tables through the C interface") {
  Tab t;
  REQUIRE(nhlgi_series_trajectory(0.0, 0, 0.0, 1.5708, 0.01, &t.t) == NHLGI_OK);
  CHECK(nhlgi_table_rows(t.t) == 158);
  CHECK(nhlgi_table_cols(t.t) == 8);
  CHECK(std::string(nhlgi_table_column(t.t, 0)) == "t");
  CHECK(nhlgi_table_column(t.t, 99) == nullptr);
  CHECK(nhlgi_table_value(t.t, 1, 0) == doctest::Approx(0.01));
  CHECK(std::isnan(nhlgi_table_value(t.t, 999, 0)));
  CHECK(nhlgi_table_set_meta(t.t, "note", "unit test") == NHLGI_OK);
  CHECK(nhlgi_table_set_seed(t.t, 5) == NHLGI_OK);

  size_t needed = 0;
  REQUIRE(nhlgi_table_serialize(t.t, NHLGI_FORMAT_CSV, nullptr, 0, &needed) == NHLGI_OK);
  std::vector<char> buf(needed);
  REQUIRE(nhlgi_table_serialize(t.t, NHLGI_FORMAT_CSV, buf.data(), buf.size(), &needed) ==
          NHLGI_OK);
  const std::string csv(buf.data());
  CHECK(csv.find("# seed: 5") != std::string::npos);
  CHECK(csv.find("# note: unit test") != std::string::npos);

  CHECK(nhlgi_table_write(t.t, NHLGI_FORMAT_JSON, "/nonexistent-dir/x.json") == NHLGI_ERR_IO);

  const double thetas[1] = {kPi / 6};
  const double times[1] = {kPi / 4};
  Tab lgi;
  REQUIRE(nhlgi_series_lgi({thetas, 1, 0}, times, 1, 0.0, &lgi.t) == NHLGI_OK);
  CHECK(nhlgi_table_rows(lgi.t) == 1);

  Tab bad;
  CHECK(nhlgi_series_trajectory(0.0, 0, 0.0, 1.0, 0.0, &bad.t) != NHLGI_OK);

  double grid[200];
  CHECK(nhlgi_time_grid(1.0, 0.01, 0, grid, 200) == 101);
}

namespace {
void collect(void* user, int id, const char*, int passed, const char*, double) {
  auto* seen = static_cast<std::vector<int>*>(user);
  seen->push_back(passed ? id : -id);
}
}  // namespace

TEST_CASE("acceptance entry point") {
  const int ids[2] = {1, 10};
  std::vector<int> seen;
  int failed = -1;
  REQUIRE(nhlgi_run_acceptance(ids, 2, collect, &seen, &failed) == NHLGI_OK);
  CHECK(failed == 0);
  CHECK(seen == std::vector<int>{1, 10});
  const int bad[1] = {11};
  CHECK(nhlgi_run_acceptance(bad, 1, collect, &seen, &failed) != NHLGI_OK);
}

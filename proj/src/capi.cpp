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

#include "nhlgi/nhlgi.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "nhlgi/acceptance.hpp"
#include "nhlgi/embedding.hpp"
#include "nhlgi/series.hpp"
#include "nhlgi/version.hpp"

struct nhlgi_hamiltonian {
  nhlgi::NHHamiltonian h;
};

struct nhlgi_table {
  nhlgi::Table t;
};

namespace {

using namespace nhlgi;

thread_local std::string g_last_error;

static_assert(static_cast<int>(ErrorCode::kInternal) == NHLGI_ERR_INTERNAL);
static_assert(static_cast<int>(ErrorCode::kInvalidArgument) == NHLGI_ERR_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::kIo) == NHLGI_ERR_IO);

nhlgi_status set_error(nhlgi_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
nhlgi_status guard(F&& body) {
  try {
    body();
    return NHLGI_OK;
  } catch (const Error& e) {
    return set_error(static_cast<nhlgi_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(NHLGI_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(NHLGI_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(NHLGI_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

Vec3 vec(const double* v) { return {v[0], v[1], v[2]}; }

ScanConfig to_config(const nhlgi_scan_config* c) {
  ScanConfig cfg;
  if (!c) return cfg;
  cfg.budget = c->budget;
  cfg.seed = c->seed;
  cfg.restarts = c->restarts;
  cfg.simplex_tol = c->simplex_tol;
  cfg.lhs_points = c->lhs_points;
  cfg.threads = c->threads;
  return cfg;
}

void fill(const ScanResult& r, nhlgi_scan_result* out) {
  *out = {};
  out->theta = r.theta;
  out->kappa = r.kappa;
  out->objective = r.objective;
  out->n_args = static_cast<int>(r.argmax.size());
  for (std::size_t i = 0; i < r.argmax.size() && i < 7; ++i) out->argmax[i] = r.argmax[i];
  out->evals = r.evals;
  out->restarts = r.restarts;
  out->seed = r.seed;
}

void fill(const LgiResult& r, nhlgi_lgi_result* out) {
  *out = {};
  out->c12 = r.c12;
  out->c23 = r.c23;
  out->c13 = r.c13;
  out->k3 = r.k3;
  out->t1 = r.t1;
  out->t2 = r.t2;
  out->t3 = r.t3;
  out->kappa = r.kappa;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      out->p12[2 * a + b] = r.j12.p[a][b];
      out->p23[2 * a + b] = r.j23.p[a][b];
      out->p13[2 * a + b] = r.j13.p[a][b];
    }
}

std::vector<ThetaSpec> specs(const nhlgi_theta_grid& g) {
  if (g.n > 0) need(g.values, "theta grid");
  std::vector<ThetaSpec> out;
  for (std::size_t i = 0; i < g.n; ++i) out.push_back({g.values[i], g.use_delta != 0});
  return out;
}

std::span<const double> view(const double* p, std::size_t n, const char* what) {
  if (n > 0) need(p, what);
  return {p, n};
}

nhlgi_status emit(Table&& t, nhlgi_table** out) {
  *out = new nhlgi_table{std::move(t)};
  return NHLGI_OK;
}

}  // namespace

extern "C" {

const char* nhlgi_version(void) { return kVersion; }

const char* nhlgi_last_error(void) { return g_last_error.c_str(); }

const char* nhlgi_status_name(nhlgi_status status) {
  if (status == NHLGI_OK) return "ok";
  if (status < NHLGI_ERR_INVALID_ARGUMENT || status > NHLGI_ERR_INTERNAL) return "unknown status";
  return error_code_name(static_cast<ErrorCode>(status));
}

nhlgi_status nhlgi_hamiltonian_create(const double a[3], const double b[3], double scale,
                                      nhlgi_hamiltonian** out) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = new nhlgi_hamiltonian{NHHamiltonian(vec(a), vec(b), scale)};
  });
}

nhlgi_status nhlgi_hamiltonian_canonical(double theta, double scale, nhlgi_hamiltonian** out) {
  return guard([&] {
    need(out, "out");
    *out = new nhlgi_hamiltonian{NHHamiltonian::canonical(theta, scale)};
  });
}

nhlgi_status nhlgi_hamiltonian_canonical_delta(double delta, double scale,
                                               nhlgi_hamiltonian** out) {
  return guard([&] {
    need(out, "out");
    *out = new nhlgi_hamiltonian{NHHamiltonian::canonical_from_delta(delta, scale)};
  });
}

void nhlgi_hamiltonian_destroy(nhlgi_hamiltonian* h) { delete h; }

nhlgi_status nhlgi_hamiltonian_gap(const nhlgi_hamiltonian* h, double* out) {
  return guard([&] {
    need(h, "hamiltonian");
    need(out, "out");
    *out = h->h.gap();
  });
}

nhlgi_status nhlgi_propagate_bloch(const nhlgi_hamiltonian* h, const double s[3], double kappa,
                                   double t, double out[3]) {
  return guard([&] {
    need(h, "hamiltonian");
    need(s, "s");
    need(out, "out");
    const Vec3 r = propagate_bloch(h->h, vec(s), kappa, t);
    out[0] = r.x();
    out[1] = r.y();
    out[2] = r.z();
  });
}

nhlgi_status nhlgi_speed(const nhlgi_hamiltonian* h, double polar, double azimuth, double t,
                         double* out) {
  return guard([&] {
    need(h, "hamiltonian");
    need(out, "out");
    *out = speed(h->h, PureState::from_angles(polar, azimuth), t);
  });
}

nhlgi_status nhlgi_k3(const nhlgi_hamiltonian* h, const double bloch[3], const double q[3],
                      double t1, double t2, double t3, double kappa, nhlgi_lgi_result* out) {
  return guard([&] {
    need(h, "hamiltonian");
    need(bloch, "bloch");
    need(q, "q");
    need(out, "out");
    fill(k3(h->h, DensityMatrix::from_bloch(vec(bloch)), Observable(vec(q)), t1, t2, t3, kappa),
         out);
  });
}

nhlgi_status nhlgi_k3_closed_form(double theta, double t, nhlgi_lgi_result* out) {
  return guard([&] {
    need(out, "out");
    const ClosedFormK3 r = k3_closed_form(theta, t);
    *out = {};
    out->c12 = r.c12;
    out->c23 = r.c23;
    out->c13 = r.c13;
    out->k3 = r.k3;
    out->t1 = 0;
    out->t2 = t;
    out->t3 = 2 * t;
  });
}

nhlgi_status nhlgi_k3_embedding(double delta, const double q[3], double t1, double t2,
                                double t3, nhlgi_lgi_result* out) {
  return guard([&] {
    need(q, "q");
    need(out, "out");
    fill(Embedding::from_delta(delta).k3(PureState::up_y(), Observable(vec(q)), t1, t2, t3),
         out);
  });
}

void nhlgi_scan_config_default(nhlgi_scan_config* out) {
  if (!out) return;
  const ScanConfig d;
  out->budget = d.budget;
  out->seed = d.seed;
  out->restarts = d.restarts;
  out->simplex_tol = d.simplex_tol;
  out->lhs_points = d.lhs_points;
  out->threads = d.threads;
}

nhlgi_status nhlgi_maximize_k3(double theta, double kappa, const nhlgi_scan_config* config,
                               nhlgi_scan_result* out) {
  return guard([&] {
    need(out, "out");
    fill(maximize_k3(theta, kappa, to_config(config)), out);
  });
}

nhlgi_status nhlgi_maximize_speed(double theta, const nhlgi_scan_config* config,
                                  nhlgi_scan_result* out) {
  return guard([&] {
    need(out, "out");
    fill(maximize_speed(theta, to_config(config)), out);
  });
}

nhlgi_status nhlgi_k3max_vs_noise(double theta, const double* kappas, size_t n,
                                  const nhlgi_scan_config* config, nhlgi_scan_result* out) {
  return guard([&] {
    need(out, "out");
    const auto res = k3max_vs_noise(theta, view(kappas, n, "kappas"), to_config(config));
    for (std::size_t i = 0; i < res.size(); ++i) fill(res[i], &out[i]);
  });
}

size_t nhlgi_default_kappa_grid(double* out, size_t cap) {
  const auto grid = default_kappa_grid();
  for (std::size_t i = 0; i < grid.size() && i < cap && out; ++i) out[i] = grid[i];
  return grid.size();
}

nhlgi_status nhlgi_series_trajectory(double theta, int use_delta, double kappa, double tmax,
                                     double step, nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(trajectory_series({theta, use_delta != 0}, kappa, tmax, step), out);
  });
}

nhlgi_status nhlgi_series_distance(nhlgi_theta_grid thetas, int rescaled, double tmax,
                                   double step, nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    const auto s = specs(thetas);
    emit(rescaled ? distance_rescaled_series(s, tmax, step) : distance_series(s, tmax, step),
         out);
  });
}

nhlgi_status nhlgi_series_speed(nhlgi_theta_grid thetas, double tmax, double step,
                                nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(speed_series(specs(thetas), tmax, step), out);
  });
}

nhlgi_status nhlgi_series_lgi(nhlgi_theta_grid thetas, const double* times, size_t n_times,
                              double kappa, nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(lgi_series(specs(thetas), view(times, n_times, "times"), kappa), out);
  });
}

nhlgi_status nhlgi_series_lgi_explicit(nhlgi_theta_grid thetas, double t1, double t2,
                                       double t3, double kappa, nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(lgi_explicit_series(specs(thetas), t1, t2, t3, kappa), out);
  });
}

nhlgi_status nhlgi_series_noise(double theta, int use_delta, const double* kappas,
                                size_t n_kappas, const double* times, size_t n_times,
                                nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(noise_series({theta, use_delta != 0}, view(kappas, n_kappas, "kappas"),
                      view(times, n_times, "times")),
         out);
  });
}

nhlgi_status nhlgi_series_embed(double theta, int use_delta, const double* times,
                                size_t n_times, nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(embed_series({theta, use_delta != 0}, view(times, n_times, "times")), out);
  });
}

nhlgi_status nhlgi_series_scan(const double* thetas, size_t n, const nhlgi_scan_config* config,
                               nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(scan_series(view(thetas, n, "thetas"), to_config(config)), out);
  });
}

nhlgi_status nhlgi_series_noisescan(double theta, int use_delta, const double* kappas,
                                    size_t n_kappas, const nhlgi_scan_config* config,
                                    nhlgi_table** out) {
  return guard([&] {
    need(out, "out");
    emit(noisescan_series({theta, use_delta != 0}, view(kappas, n_kappas, "kappas"),
                          to_config(config)),
         out);
  });
}

size_t nhlgi_time_grid(double tmax, double step, int first, double* out, size_t cap) {
  std::size_t count = 0;
  const nhlgi_status st = guard([&] {
    const auto grid = time_grid(tmax, step, first);
    for (std::size_t i = 0; i < grid.size() && i < cap && out; ++i) out[i] = grid[i];
    count = grid.size();
  });
  return st == NHLGI_OK ? count : 0;
}

void nhlgi_table_destroy(nhlgi_table* t) { delete t; }

size_t nhlgi_table_rows(const nhlgi_table* t) { return t ? t->t.rows.size() : 0; }

size_t nhlgi_table_cols(const nhlgi_table* t) { return t ? t->t.columns.size() : 0; }

const char* nhlgi_table_column(const nhlgi_table* t, size_t col) {
  if (!t || col >= t->t.columns.size()) return nullptr;
  return t->t.columns[col].c_str();
}

double nhlgi_table_value(const nhlgi_table* t, size_t row, size_t col) {
  if (!t || row >= t->t.rows.size() || col >= t->t.columns.size())
    return std::numeric_limits<double>::quiet_NaN();
  return t->t.rows[row][col];
}

nhlgi_status nhlgi_table_set_meta(nhlgi_table* t, const char* key, const char* value) {
  return guard([&] {
    need(t, "table");
    need(key, "key");
    need(value, "value");
    t->t.set_param(key, std::string(value));
  });
}

nhlgi_status nhlgi_table_set_seed(nhlgi_table* t, uint64_t seed) {
  return guard([&] {
    need(t, "table");
    t->t.seed = seed;
  });
}

nhlgi_status nhlgi_table_write(const nhlgi_table* t, nhlgi_format format, const char* path) {
  return guard([&] {
    need(t, "table");
    need(path, "path");
    write_table(t->t, format == NHLGI_FORMAT_JSON ? Format::kJson : Format::kCsv, path);
  });
}

nhlgi_status nhlgi_table_serialize(const nhlgi_table* t, nhlgi_format format, char* buf,
                                   size_t cap, size_t* needed) {
  return guard([&] {
    need(t, "table");
    const std::string text =
        serialize(t->t, format == NHLGI_FORMAT_JSON ? Format::kJson : Format::kCsv);
    if (needed) *needed = text.size() + 1;
    if (buf && cap > text.size()) std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

nhlgi_status nhlgi_run_acceptance(const int* ids, size_t n, nhlgi_criterion_callback callback,
                                  void* user, int* n_failed) {
  return guard([&] {
    std::vector<int> list;
    if (n > 0) {
      need(ids, "ids");
      list.assign(ids, ids + n);
    }
    int failed = 0;
    run_acceptance(list, [&](const CriterionResult& r) {
      if (!r.passed) ++failed;
      if (callback)
        callback(user, r.id, r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), r.seconds);
    });
    if (n_failed) *n_failed = failed;
  });
}

}  // extern "C"

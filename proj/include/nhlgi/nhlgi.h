/*
 * Copyright 2026 The nhlgi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libnhlgi. Every fallible call returns an nhlgi_status; on
 * failure a message is available from nhlgi_last_error() (per thread, valid
 * until the next failing call on that thread). Handles are opaque and owned
 * by the caller; destroy functions accept NULL.
 */

#ifndef NHLGI_H
#define NHLGI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NHLGI_API __declspec(dllexport)
#else
#define NHLGI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nhlgi_status {
  NHLGI_OK = 0,
  NHLGI_ERR_INVALID_ARGUMENT = 1,
  NHLGI_ERR_NON_FINITE = 2,
  NHLGI_ERR_NON_HERMITIAN = 3,
  NHLGI_ERR_DEGENERATE_EVOLUTION = 4,
  NHLGI_ERR_STIFFNESS = 5,
  NHLGI_ERR_POSTSELECTION_STARVATION = 6,
  NHLGI_ERR_DOMAIN = 7,
  NHLGI_ERR_CONFIG = 8,
  NHLGI_ERR_IO = 9,
  NHLGI_ERR_INTERNAL = 10
} nhlgi_status;

NHLGI_API const char* nhlgi_version(void);
NHLGI_API const char* nhlgi_last_error(void);
NHLGI_API const char* nhlgi_status_name(nhlgi_status status);

/* Hamiltonians ----------------------------------------------------------- */

typedef struct nhlgi_hamiltonian nhlgi_hamiltonian;

/* H = scale (a - i b).sigma with a.b = 0 and |a| > |b|. */
NHLGI_API nhlgi_status nhlgi_hamiltonian_create(const double a[3], const double b[3],
                                                double scale, nhlgi_hamiltonian** out);
/* sec(theta) sigma_x + i tan(theta) sigma_z, theta in [0, pi/2 - 1e-6]. */
NHLGI_API nhlgi_status nhlgi_hamiltonian_canonical(double theta, double scale,
                                                   nhlgi_hamiltonian** out);
/* The same family with delta = pi/2 - theta, delta in [1e-6, pi/2]. */
NHLGI_API nhlgi_status nhlgi_hamiltonian_canonical_delta(double delta, double scale,
                                                         nhlgi_hamiltonian** out);
NHLGI_API void nhlgi_hamiltonian_destroy(nhlgi_hamiltonian* h);
NHLGI_API nhlgi_status nhlgi_hamiltonian_gap(const nhlgi_hamiltonian* h, double* out);

/* Bloch vector (rho = I/2 + S.sigma) after time t; kappa >= 0. */
NHLGI_API nhlgi_status nhlgi_propagate_bloch(const nhlgi_hamiltonian* h, const double s[3],
                                             double kappa, double t, double out[3]);

/* Evolution speed of the trajectory from the pure state with Bloch angles
 * (polar, azimuth), at time t. */
NHLGI_API nhlgi_status nhlgi_speed(const nhlgi_hamiltonian* h, double polar, double azimuth,
                                   double t, double* out);

/* Leggett-Garg ----------------------------------------------------------- */

typedef struct nhlgi_lgi_result {
  double c12, c23, c13, k3;
  double t1, t2, t3, kappa;
  /* Joint probabilities P(q_i, q_j), index 0 = +1, row-major [q_i][q_j]. */
  double p12[4], p23[4], p13[4];
} nhlgi_lgi_result;

/* Three-time protocol from the initial Bloch vector `bloch` with observable
 * direction q (unit vector); 0 <= t1 < t2 < t3. */
NHLGI_API nhlgi_status nhlgi_k3(const nhlgi_hamiltonian* h, const double bloch[3],
                                const double q[3], double t1, double t2, double t3,
                                double kappa, nhlgi_lgi_result* out);
/* Closed forms for H_theta, |up>_y, Q = -sigma_y and equal spacing t; only
 * c12, c23, c13, k3 are filled. */
NHLGI_API nhlgi_status nhlgi_k3_closed_form(double theta, double t, nhlgi_lgi_result* out);
/* The protocol inside the 4D Hermitian embedding, from |up>_y. */
NHLGI_API nhlgi_status nhlgi_k3_embedding(double delta, const double q[3], double t1,
                                          double t2, double t3, nhlgi_lgi_result* out);

/* Scans ------------------------------------------------------------------ */

typedef struct nhlgi_scan_config {
  long budget;
  uint64_t seed;
  int restarts;
  double simplex_tol;
  int lhs_points;
  int threads; /* 0: NHLGI_THREADS or hardware concurrency */
} nhlgi_scan_config;

typedef struct nhlgi_scan_result {
  double theta;
  double kappa;
  double objective;
  int n_args;       /* 7 for K3, 3 for speed */
  double argmax[7]; /* theta_s, phi_s, theta_q, phi_q, t1, t2, t3 | theta_s, phi_s, t */
  long evals;
  int restarts;
  uint64_t seed;
} nhlgi_scan_result;

NHLGI_API void nhlgi_scan_config_default(nhlgi_scan_config* out);
NHLGI_API nhlgi_status nhlgi_maximize_k3(double theta, double kappa,
                                         const nhlgi_scan_config* config,
                                         nhlgi_scan_result* out);
NHLGI_API nhlgi_status nhlgi_maximize_speed(double theta, const nhlgi_scan_config* config,
                                            nhlgi_scan_result* out);
/* out must hold n results. */
NHLGI_API nhlgi_status nhlgi_k3max_vs_noise(double theta, const double* kappas, size_t n,
                                            const nhlgi_scan_config* config,
                                            nhlgi_scan_result* out);
/* Writes up to cap values; returns the full grid length. */
NHLGI_API size_t nhlgi_default_kappa_grid(double* out, size_t cap);

/* Series tables ---------------------------------------------------------- */

typedef struct nhlgi_table nhlgi_table;

typedef enum nhlgi_format { NHLGI_FORMAT_CSV = 0, NHLGI_FORMAT_JSON = 1 } nhlgi_format;

/* Grid of H_theta members; values are delta = pi/2 - theta when use_delta. */
typedef struct nhlgi_theta_grid {
  const double* values;
  size_t n;
  int use_delta;
} nhlgi_theta_grid;

NHLGI_API nhlgi_status nhlgi_series_trajectory(double theta, int use_delta, double kappa,
                                               double tmax, double step, nhlgi_table** out);
/* rescaled != 0: geodesic and trace distance of |H>, |V> under cos(theta) H. */
NHLGI_API nhlgi_status nhlgi_series_distance(nhlgi_theta_grid thetas, int rescaled,
                                             double tmax, double step, nhlgi_table** out);
NHLGI_API nhlgi_status nhlgi_series_speed(nhlgi_theta_grid thetas, double tmax, double step,
                                          nhlgi_table** out);
/* Equal spacing t1 = 0, t2 = t, t3 = 2t over t = step, 2 step, ..., tmax. */
NHLGI_API nhlgi_status nhlgi_series_lgi(nhlgi_theta_grid thetas, const double* times,
                                        size_t n_times, double kappa, nhlgi_table** out);
NHLGI_API nhlgi_status nhlgi_series_lgi_explicit(nhlgi_theta_grid thetas, double t1,
                                                 double t2, double t3, double kappa,
                                                 nhlgi_table** out);
NHLGI_API nhlgi_status nhlgi_series_noise(double theta, int use_delta, const double* kappas,
                                          size_t n_kappas, const double* times,
                                          size_t n_times, nhlgi_table** out);
NHLGI_API nhlgi_status nhlgi_series_embed(double theta, int use_delta, const double* times,
                                          size_t n_times, nhlgi_table** out);
NHLGI_API nhlgi_status nhlgi_series_scan(const double* thetas, size_t n,
                                         const nhlgi_scan_config* config, nhlgi_table** out);
NHLGI_API nhlgi_status nhlgi_series_noisescan(double theta, int use_delta,
                                              const double* kappas, size_t n_kappas,
                                              const nhlgi_scan_config* config,
                                              nhlgi_table** out);

/* i * step for i = first .. floor(tmax/step + 1e-9); returns the count and
 * writes up to cap values. Returns 0 and sets the last error on bad input. */
NHLGI_API size_t nhlgi_time_grid(double tmax, double step, int first, double* out,
                                 size_t cap);

NHLGI_API void nhlgi_table_destroy(nhlgi_table* t);
NHLGI_API size_t nhlgi_table_rows(const nhlgi_table* t);
NHLGI_API size_t nhlgi_table_cols(const nhlgi_table* t);
NHLGI_API const char* nhlgi_table_column(const nhlgi_table* t, size_t col);
/* NaN when out of range. */
NHLGI_API double nhlgi_table_value(const nhlgi_table* t, size_t row, size_t col);
/* Adds a text metadata entry (e.g. the producing command line). */
NHLGI_API nhlgi_status nhlgi_table_set_meta(nhlgi_table* t, const char* key, const char* value);
NHLGI_API nhlgi_status nhlgi_table_set_seed(nhlgi_table* t, uint64_t seed);
NHLGI_API nhlgi_status nhlgi_table_write(const nhlgi_table* t, nhlgi_format format,
                                         const char* path);
/* Serializes into buf (NUL-terminated when it fits); *needed receives the
 * size including the terminator. */
NHLGI_API nhlgi_status nhlgi_table_serialize(const nhlgi_table* t, nhlgi_format format,
                                             char* buf, size_t cap, size_t* needed);

/* Acceptance ------------------------------------------------------------- */

typedef void (*nhlgi_criterion_callback)(void* user, int id, const char* name, int passed,
                                         const char* detail, double seconds);

/* Runs criteria ids[0..n) (all when n == 0); *n_failed receives the number of
 * failing criteria. */
NHLGI_API nhlgi_status nhlgi_run_acceptance(const int* ids, size_t n,
                                            nhlgi_criterion_callback callback, void* user,
                                            int* n_failed);

#ifdef __cplusplus
}
#endif

#endif /* NHLGI_H */

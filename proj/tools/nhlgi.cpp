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

// nhlgi: figure data series and the acceptance suite from the command line.
// Exit codes: 0 success, 1 numerical or I/O failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nhlgi/nhlgi.h"

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError {
  std::string message;
};

struct Options {
  std::vector<double> theta, delta, kappa;
  double t = NAN, tmax = NAN, step = NAN, t1 = NAN, t2 = NAN, t3 = NAN;
  std::uint64_t seed = 1;
  long budget = 0;
  std::string out = "-";
  std::string format = "csv";
  bool rescaled = false;
  std::vector<int> criteria;
  std::string command_line;
};

class Failure {
 public:
  Failure(std::string where, nhlgi_status status)
      : where_(std::move(where)), status_(status), message_(nhlgi_last_error()) {}
  void report() const {
    std::fprintf(stderr, "nhlgi: %s failed (%s): %s\n", where_.c_str(),
                 nhlgi_status_name(status_), message_.c_str());
  }

 private:
  std::string where_;
  nhlgi_status status_;
  std::string message_;
};

void check(nhlgi_status status, const char* where) {
  if (status != NHLGI_OK) throw Failure(where, status);
}

double value_or(double v, double fallback) { return std::isnan(v) ? fallback : v; }

// Theta grid from --theta or --delta (mutually exclusive).
struct Grid {
  std::vector<double> values;
  bool use_delta = false;
  nhlgi_theta_grid c() const { return {values.data(), values.size(), use_delta ? 1 : 0}; }
};

Grid theta_grid(const Options& o, std::vector<double> default_theta,
                std::vector<double> default_delta = {}) {
  if (!o.theta.empty() && !o.delta.empty())
    throw UsageError{"--theta and --delta are mutually exclusive"};
  if (!o.theta.empty()) return {o.theta, false};
  if (!o.delta.empty()) return {o.delta, true};
  if (!default_delta.empty()) return {std::move(default_delta), true};
  return {std::move(default_theta), false};
}

Grid single(const Grid& g, const char* command) {
  if (g.values.size() != 1)
    throw UsageError{std::string(command) + " takes a single --theta or --delta value"};
  return g;
}

std::vector<double> times(const Options& o, double tmax_default, double step_default,
                          int first) {
  if (!std::isnan(o.t)) return {o.t};
  const double tmax = value_or(o.tmax, tmax_default), step = value_or(o.step, step_default);
  const size_t n = nhlgi_time_grid(tmax, step, first, nullptr, 0);
  if (n == 0 && !(step > 0 && tmax >= 0))
    throw UsageError{std::string("invalid time grid: ") + nhlgi_last_error()};
  std::vector<double> grid(n);
  nhlgi_time_grid(tmax, step, first, grid.data(), n);
  return grid;
}

nhlgi_scan_config scan_config(const Options& o) {
  nhlgi_scan_config cfg;
  nhlgi_scan_config_default(&cfg);
  cfg.seed = o.seed;
  if (o.budget > 0) cfg.budget = o.budget;
  return cfg;
}

void emit(nhlgi_table* table, const Options& o) {
  struct Holder {
    nhlgi_table* t;
    ~Holder() { nhlgi_table_destroy(t); }
  } holder{table};
  check(nhlgi_table_set_meta(table, "command_line", o.command_line.c_str()), "metadata");
  const nhlgi_format format = o.format == "json" ? NHLGI_FORMAT_JSON : NHLGI_FORMAT_CSV;
  if (o.out != "-") {
    check(nhlgi_table_write(table, format, o.out.c_str()), "output");
    return;
  }
  size_t needed = 0;
  check(nhlgi_table_serialize(table, format, nullptr, 0, &needed), "output");
  std::string buf(needed, '\0');
  check(nhlgi_table_serialize(table, format, buf.data(), buf.size(), &needed), "output");
  std::fwrite(buf.data(), 1, needed - 1, stdout);
  std::fflush(stdout);
}

int run(const std::string& command, const Options& o) {
  nhlgi_table* table = nullptr;
  if (command == "trajectory") {
    const Grid g = single(theta_grid(o, {0.0}), "trajectory");
    if (o.kappa.size() > 1) throw UsageError{"trajectory takes a single --kappa"};
    check(nhlgi_series_trajectory(g.values[0], g.use_delta, o.kappa.empty() ? 0 : o.kappa[0],
                                  value_or(o.tmax, kPi), value_or(o.step, 0.01), &table),
          "trajectory");
  } else if (command == "distance") {
    const Grid g = theta_grid(o, {0.0, kPi / 4, 1.2, 1.5});
    check(nhlgi_series_distance(g.c(), o.rescaled, value_or(o.tmax, kPi),
                                value_or(o.step, 0.01), &table),
          "distance");
  } else if (command == "speed") {
    const Grid g = theta_grid(o, {0.0, kPi / 4, 1.2, 1.5});
    check(nhlgi_series_speed(g.c(), value_or(o.tmax, kPi), value_or(o.step, 0.01), &table),
          "speed");
  } else if (command == "lgi") {
    const Grid g = theta_grid(o, {0.0, kPi / 6, kPi / 4, kPi / 3, 1.4});
    if (o.kappa.size() > 1) throw UsageError{"lgi takes a single --kappa"};
    const double kappa = o.kappa.empty() ? 0 : o.kappa[0];
    const int explicit_times = !std::isnan(o.t1) + !std::isnan(o.t2) + !std::isnan(o.t3);
    if (explicit_times != 0 && explicit_times != 3)
      throw UsageError{"--t1, --t2 and --t3 must be given together"};
    if (explicit_times == 3) {
      check(nhlgi_series_lgi_explicit(g.c(), o.t1, o.t2, o.t3, kappa, &table), "lgi");
    } else {
      const auto ts = times(o, kPi / 2, 0.01, 1);
      check(nhlgi_series_lgi(g.c(), ts.data(), ts.size(), kappa, &table), "lgi");
    }
  } else if (command == "noise") {
    const Grid g = single(theta_grid(o, {}, {1e-3}), "noise");
    const std::vector<double> kappas =
        o.kappa.empty() ? std::vector<double>{0, 1e-7, 1e-6, 1e-5} : o.kappa;
    const auto ts = times(o, kPi / 2, 1e-3, 1);
    check(nhlgi_series_noise(g.values[0], g.use_delta, kappas.data(), kappas.size(), ts.data(),
                             ts.size(), &table),
          "noise");
  } else if (command == "embed") {
    const Grid g = single(theta_grid(o, {}, {0.1}), "embed");
    const auto ts = times(o, kPi, kPi / 50, 1);
    check(nhlgi_series_embed(g.values[0], g.use_delta, ts.data(), ts.size(), &table), "embed");
  } else if (command == "scan") {
    if (!o.delta.empty()) throw UsageError{"scan takes --theta"};
    const std::vector<double> thetas =
        o.theta.empty() ? std::vector<double>{0, 0.3, 0.6, 0.9, 1.2, 1.47} : o.theta;
    const nhlgi_scan_config cfg = scan_config(o);
    check(nhlgi_series_scan(thetas.data(), thetas.size(), &cfg, &table), "scan");
  } else if (command == "noisescan") {
    const Grid g = single(theta_grid(o, {}, {1e-3}), "noisescan");
    std::vector<double> kappas = o.kappa;
    if (kappas.empty()) {
      kappas.resize(nhlgi_default_kappa_grid(nullptr, 0));
      nhlgi_default_kappa_grid(kappas.data(), kappas.size());
    }
    const nhlgi_scan_config cfg = scan_config(o);
    check(nhlgi_series_noisescan(g.values[0], g.use_delta, kappas.data(), kappas.size(), &cfg,
                                 &table),
          "noisescan");
  } else if (command == "check") {
    int failed = 0;
    auto print = [](void*, int id, const char* name, int passed, const char* detail,
                    double seconds) {
      std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", passed ? "PASS" : "FAIL", id, name,
                  detail, seconds);
      std::fflush(stdout);
    };
    check(nhlgi_run_acceptance(o.criteria.data(), o.criteria.size(), print, nullptr, &failed),
          "acceptance");
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : kExitFailure;
  }
  emit(table, o);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian two-level dynamics and Leggett-Garg correlators"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(nhlgi_version()));

  Options o;
  o.command_line = "nhlgi";  // program path omitted so output does not depend on it
  for (int i = 1; i < argc; ++i) o.command_line += " " + std::string(argv[i]);

  auto series_flags = [&](CLI::App* sub, bool scans) {
    sub->add_option("--theta", o.theta, "theta value(s) in [0, pi/2 - 1e-6], comma separated")
        ->delimiter(',')
        ->check(CLI::Range(0.0, kPi / 2 - 1e-6));
    sub->add_option("--delta", o.delta, "delta = pi/2 - theta value(s) in [1e-6, pi/2]")
        ->delimiter(',')
        ->check(CLI::Range(1e-6, kPi / 2));
    sub->add_option("--kappa", o.kappa, "noise strength(s) >= 0")
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--t", o.t, "single time (lgi/noise/embed: equal spacing t)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tmax", o.tmax, "last time of the grid")->check(CLI::NonNegativeNumber);
    sub->add_option("--step", o.step, "time step (> 0)")->check(CLI::PositiveNumber);
    sub->add_option("--t1", o.t1, "first measurement time");
    sub->add_option("--t2", o.t2, "second measurement time");
    sub->add_option("--t3", o.t3, "third measurement time");
    sub->add_option("--seed", o.seed, "scan seed");
    auto* b = sub->add_option("--budget", o.budget, "scan evaluation budget");
    if (scans) b->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "output path ('-' for stdout)");
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"trajectory", "Bloch vector along the trajectory from |up>_y"},
      {"distance", "geodesic distance and S_n (--rescaled: distance vs trace distance)"},
      {"speed", "evolution speed v(t)"},
      {"lgi", "correlators and K3 at equal spacing or explicit times"},
      {"noise", "K3(t) per noise strength"},
      {"scan", "K3max and vmax over the 7-parameter space per theta"},
      {"noisescan", "K3max versus noise strength"},
      {"embed", "4D Hermitian embedding equivalence report"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    series_flags(sub, name == "scan" || name == "noisescan");
    if (name == "distance") sub->add_flag("--rescaled", o.rescaled, "Hamiltonian cos(theta) H");
  }
  CLI::App* chk = app.add_subcommand("check", "run the acceptance suite");
  chk->add_option("--criteria", o.criteria, "criterion ids (default: all)")
      ->delimiter(',')
      ->check(CLI::Range(1, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "nhlgi %s: %s\n", command.c_str(), e.message.c_str());
    return kExitUsage;
  } catch (const Failure& f) {
    f.report();
    return kExitFailure;
  }
}

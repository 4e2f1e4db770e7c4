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

#include "doctest.h"
#include "support.hpp"

#include "nhlgi/series.hpp"
#include "nhlgi/table.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

using namespace nhlgi;
using nlohmann::json;

namespace {

Table sample_table() {
  Table t;
  t.command = "nhlgi test";
  t.seed = 7;
  t.set_param("theta", 0.5);
  t.set_param("kappa", std::vector<double>{0.0, 1e-3});
  t.set_param("frame", std::string("xyz"));
  t.columns = {"t", "a", "b"};
  for (int i = 0; i < 25; ++i)
    t.add_row({0.1 * i, std::sin(1.0 + i) * 1e-7, std::exp(0.37 * i) / 3.0});
  return t;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("CSV round trip is exact") {
  const Table t = sample_table();
  const ParsedCsv p = parse_csv(to_csv(t));
  CHECK(p.columns == t.columns);
  REQUIRE(p.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(p.rows[i] == t.rows[i]);
}

TEST_CASE("CSV header layout") {
  const std::string csv = to_csv(sample_table());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# command: nhlgi test");
  std::getline(in, line);
  CHECK(line.rfind("# version: ", 0) == 0);
  std::getline(in, line);
  CHECK(line == "# seed: 7");
  std::getline(in, line);
  CHECK(line == "# theta: 0.5");
  std::getline(in, line);
  CHECK(line == "# kappa: 0,0.001");
  std::getline(in, line);
  CHECK(line == "# frame: xyz");
  std::getline(in, line);
  CHECK(line == "t,a,b");
}

TEST_CASE("empty table is header only") {
  Table t;
  t.command = "empty";
  t.columns = {"x", "y"};
  const ParsedCsv p = parse_csv(to_csv(t));
  CHECK(p.columns == t.columns);
  CHECK(p.rows.empty());
  const json j = json::parse(to_json(t));
  CHECK(j["rows"].empty());
}

TEST_CASE("row width is checked") {
  Table t;
  t.columns = {"x", "y"};
  CHECK_THROWS_AS(t.add_row({1.0}), Error);
}

TEST_CASE("JSON schema") {
  Table t = sample_table();
  ScanResult r;
  r.theta = 0.3;
  r.objective = 2.5;
  r.argmax_names = {"t1", "t2"};
  r.argmax = {0.1, 0.2};
  r.evals = 99;
  r.seed = 7;
  t.results.push_back(r);
  const json j = json::parse(to_json(t));
  CHECK(j["metadata"]["command"] == "nhlgi test");
  CHECK(j["metadata"]["seed"] == 7);
  CHECK(j["metadata"]["version"].is_string());
  CHECK(j["metadata"]["parameters"]["theta"] == 0.5);
  CHECK(j["metadata"]["parameters"]["kappa"].size() == 2);
  CHECK(j["metadata"]["parameters"]["frame"] == "xyz");
  CHECK(j["columns"].size() == 3);
  REQUIRE(j["rows"].size() == 25);
  CHECK(j["rows"][24][2].get<double>() == t.rows[24][2]);
  REQUIRE(j["results"].size() == 1);
  CHECK(j["results"][0]["objective_kind"] == "K3");
  CHECK(j["results"][0]["argmax"]["t2"] == 0.2);
  CHECK(j["results"][0]["evals"] == 99);
}

TEST_CASE("writing is byte stable and reports I/O failures") {
  const Table t = sample_table();
  const std::string path = "nhlgi_table_test.csv";
  write_table(t, Format::kCsv, path);
  const std::string first = slurp(path);
  write_table(t, Format::kCsv, path);
  CHECK(slurp(path) == first);
  CHECK(first == to_csv(t));
  std::remove(path.c_str());
  try {
    write_table(t, Format::kJson, "/nonexistent-dir/out.json");
    FAIL("expected an I/O error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
  CHECK(parse_format("json") == Format::kJson);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("time grid") {
  const auto g = time_grid(kPi / 2, 0.01);
  CHECK(g.size() == 158);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == doctest::Approx(1.57));
  CHECK(time_grid(1.0, 0.25, 1).size() == 4);
  CHECK(time_grid(1.0, 0.25, 1).front() == 0.25);
}

TEST_CASE("series tables") {
  const ThetaSpec theta{kPi / 6, false};
  const auto traj = trajectory_series(theta, 0.0, kPi / 2, 0.01);
  CHECK(traj.rows.size() == 158);
  CHECK(traj.columns.front() == "t");
  for (const auto& row : traj.rows) CHECK(row.back() == doctest::Approx(1.0).epsilon(1e-8));

  const ThetaSpec thetas[] = {theta};
  const double times[] = {kPi / 4};
  const auto lgi = lgi_series(thetas, times, 0.0);
  REQUIRE(lgi.rows.size() == 1);
  const auto& cols = lgi.columns;
  const auto k3_col = std::find(cols.begin(), cols.end(), "K3") - cols.begin();
  const auto cf_col = std::find(cols.begin(), cols.end(), "K3_closed_form") - cols.begin();
  CHECK(lgi.rows[0][k3_col] == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(lgi.rows[0][cf_col] == doctest::Approx(1.75).epsilon(1e-12));

  // A grid column appears when more than one theta is requested.
  const ThetaSpec two[] = {{0.0, false}, {0.5, false}};
  const auto multi = lgi_series(two, times, 0.0);
  CHECK(multi.columns.front() == "theta");
  CHECK(multi.rows.size() == 2);

  const ThetaSpec delta{0.1, true};
  const double embed_times[] = {0.0, 0.5, 1.0};
  const auto emb = embed_series(delta, embed_times);
  CHECK(emb.rows.size() == 3);
}

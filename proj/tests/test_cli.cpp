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

// Drives the command-line tool as a subprocess.

#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + NHLGI_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Data rows of a CSV document, split into cells.
std::vector<std::vector<std::string>> data_rows(const std::string& csv) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (header) {
      header = false;
      rows.insert(rows.begin(), cells);  // row 0 holds the column names
      continue;
    }
    rows.push_back(cells);
  }
  return rows;
}

double cell(const std::vector<std::vector<std::string>>& rows, std::size_t row,
            const std::string& column) {
  for (std::size_t c = 0; c < rows[0].size(); ++c)
    if (rows[0][c] == column) return std::stod(rows[row][c]);
  FAIL("missing column " << column);
  return NAN;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scratch(const std::string& name) { return std::string(NHLGI_SCRATCH_DIR) + "/" + name; }

}  // namespace

TEST_CASE("lgi example") {
  const Run r = run("lgi --theta 0.5236 --t 0.7854");
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(cell(rows, 1, "K3") == doctest::Approx(1.75).epsilon(1e-4));
  CHECK(cell(rows, 1, "C13") == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(r.out.rfind("# command: lgi\n", 0) == 0);
  CHECK(r.out.find("# command_line: nhlgi lgi --theta 0.5236 --t 0.7854\n") != std::string::npos);
}

TEST_CASE("trajectory example") {
  const Run r = run("trajectory --theta 0 --tmax 1.5708 --step 0.01");
  REQUIRE(r.code == 0);
  const auto rows = data_rows(r.out);
  CHECK(rows.size() == 1 + 158);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(cell(rows, i, "purity") == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("lgi --no-such-flag").code == 2);
  CHECK(run("lgi --theta 1.6").code == 2);
  CHECK(run("trajectory --step 0").code == 2);
  CHECK(run("noise --kappa -1").code == 2);
  CHECK(run("lgi --format xml").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("bogus").code == 2);
}

TEST_CASE("runtime failures exit with 1") {
  CHECK(run("lgi --out /nonexistent-dir/out.csv").code == 1);
  CHECK(run("lgi --theta 0.3 --t1 1 --t2 0.5 --t3 2").code == 1);
}

TEST_CASE("file output is byte stable") {
  const std::string path = scratch("cli_speed.csv");
  REQUIRE(run("speed --theta 1.0 --tmax 3 --step 0.1 --out " + path).code == 0);
  const std::string first = slurp(path);
  REQUIRE(run("speed --theta 1.0 --tmax 3 --step 0.1 --out " + path).code == 0);
  CHECK(slurp(path) == first);
  CHECK(first.size() > 100);
  std::remove(path.c_str());
}

TEST_CASE("json output") {
  const Run r = run("lgi --theta 0.5236 --t 0.7854 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["metadata"]["command"] == "lgi");
  CHECK(j["metadata"]["parameters"]["command_line"] == "nhlgi lgi --theta 0.5236 --t 0.7854 --format json");
  CHECK(j["rows"].size() == 1);
}

TEST_CASE("every subcommand runs") {
  for (const char* args : {
           "distance --tmax 1 --step 0.1",
           "distance --rescaled --tmax 1 --step 0.1",
           "speed --tmax 1 --step 0.1",
           "noise --tmax 0.5 --step 0.05",
           "embed --delta 0.1",
           "lgi --delta 0.001 --t1 0 --t2 0.5 --t3 1.2",
           "scan --theta 0,0.6 --budget 3000 --seed 5",
           "noisescan --delta 0.1 --kappa 0,1,100 --budget 3000",
       }) {
    CAPTURE(args);
    const Run r = run(args);
    CHECK(r.code == 0);
    CHECK(data_rows(r.out).size() >= 2);
  }
}

TEST_CASE("scan output is seeded and deterministic") {
  const Run a = run("scan --theta 0.6 --budget 3000 --seed 11");
  const Run b = run("scan --theta 0.6 --budget 3000 --seed 11");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# seed: 11") != std::string::npos);
}

TEST_CASE("check subcommand") {
  const Run r = run("check --criteria 1,10");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line))
    if (line.rfind("[PASS]", 0) == 0 || line.rfind("[FAIL]", 0) == 0) ++lines;
  CHECK(lines == 2);
}

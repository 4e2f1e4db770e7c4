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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <cstdio>
#include <cstdlib>
#include <vector>

#include "nhlgi/nhlgi.h"

namespace {

void report(void*, int id, const char* name, int passed, const char* detail, double seconds) {
  std::printf("%s criterion %d (%s): %s [%.1fs]\n", passed ? "PASS" : "FAIL", id, name, detail,
              seconds);
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  int failed = 0;
  const nhlgi_status st =
      nhlgi_run_acceptance(ids.empty() ? nullptr : ids.data(), ids.size(), report, nullptr, &failed);
  if (st != NHLGI_OK) {
    std::fprintf(stderr, "acceptance: %s: %s\n", nhlgi_status_name(st), nhlgi_last_error());
    return 2;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

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

// The acceptance suite: ten numbered criteria with fixed tolerances, shared by
// the `check` subcommand and the acceptance test binary.

#ifndef NHLGI_ACCEPTANCE_HPP
#define NHLGI_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace nhlgi {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // measured values against their thresholds
  double seconds = 0;
};

inline constexpr int kCriterionCount = 10;

/// Title of criterion id (1-based).
std::string criterion_name(int id);

/// Runs the criteria listed in `ids` (all when empty), in ascending order,
/// calling `on_result` after each. Criterion 9 reuses the scans of
/// criterion 3 when both run. Exceptions inside a criterion count as failure.
std::vector<CriterionResult> run_acceptance(
    const std::vector<int>& ids = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace nhlgi

#endif  // NHLGI_ACCEPTANCE_HPP

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

#ifndef NHLGI_ERROR_HPP
#define NHLGI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nhlgi {

// Numeric values are shared with nhlgi_status in the C header.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kNonFinite = 2,
  kNonHermitian = 3,
  kDegenerateEvolution = 4,
  kStiffness = 5,
  kPostSelectionStarvation = 6,
  kDomain = 7,
  kConfig = 8,
  kIo = 9,
  kInternal = 10,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by the ODE integrators when the adaptive step collapses.
class StiffnessError : public Error {
 public:
  StiffnessError(double time, const std::string& what)
      : Error(ErrorCode::kStiffness, what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const char* what) {
  if (!condition) throw Error(code, what);
}

}  // namespace nhlgi

#endif  // NHLGI_ERROR_HPP

// Copyright 2026 The robust_fluid Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBUST_FLUID_ERRORS_H_
#define ROBUST_FLUID_ERRORS_H_

#include <stdexcept>
#include <string>

namespace robust_fluid {

// Bad input: malformed networks, uncertainty sets, configs, files.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The LP layer failed to produce a trustworthy answer.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A pivot or basis factorization fell below the configured pivot tolerance.
class IllConditionedError : public SolverError {
 public:
  explicit IllConditionedError(const std::string& what)
      : SolverError("ill-conditioned: " + what) {}
};

// An optimization over a perturbation set has no finite optimum.
class UnboundedError : public SolverError {
 public:
  explicit UnboundedError(const std::string& what)
      : SolverError("unbounded: " + what) {}
};

}  // namespace robust_fluid

#endif  // ROBUST_FLUID_ERRORS_H_

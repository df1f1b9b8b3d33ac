// Copyright 2026 the sidon4 authors
//
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

#pragma once

#include <stdexcept>
#include <string>

namespace sidon4 {

// Thrown when an exact computation would exceed a configured enumeration
// budget (monomial caps, candidate caps, truncation budgets). The message
// always says what to raise or which cheaper method to use instead; callers
// must never get a silently degraded value.
class EnumerationLimitError : public std::runtime_error {
 public:
  explicit EnumerationLimitError(const std::string &what)
      : std::runtime_error(what) {}
};

// Thrown when an infinite solution family provably fails the comparison test
// for convergence, i.e. no truncation point can bound the tail.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(const std::string &what)
      : std::runtime_error(what) {}
};

// Thrown for representation orders outside the supported range {2, 3, 4}.
class UnsupportedOrderError : public std::invalid_argument {
 public:
  explicit UnsupportedOrderError(const std::string &what)
      : std::invalid_argument(what) {}
};

}  // namespace sidon4

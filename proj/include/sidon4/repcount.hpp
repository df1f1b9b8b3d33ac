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

#include <cstdint>
#include <span>
#include <vector>

namespace sidon4 {

// Exact representation counts of n as a sum of h elements of a set A:
//
//   total(n)    -- tuples a_1 <= a_2 <= ... <= a_h, all in A, summing to n
//                  (the multiset representation function R_h)
//   strict(n)   -- tuples a_1 <  a_2 <  ... <  a_h            (r_h)
//   repeated(n) -- non-decreasing tuples with at least two equal terms
//
// total = strict + repeated always: the non-decreasing tuples split into
// those with all terms distinct and those with a repeat.
//
// Supported orders: h in {2, 3, 4}. Counts are exact int64; overflow is a
// hard error (std::overflow_error), never a wrapped value.

struct RepDecomposition {
  std::int64_t total = 0;
  std::int64_t strict = 0;
  std::int64_t repeated = 0;
};

class RepCountTable {
 public:
  RepCountTable(int order, std::int64_t bound);

  int order() const { return order_; }
  std::int64_t bound() const { return bound_; }

  // n must be in [1, bound]; throws std::out_of_range otherwise.
  std::int64_t total(std::int64_t n) const;
  std::int64_t strict(std::int64_t n) const;
  std::int64_t repeated(std::int64_t n) const;

  // Raw rows, index 0..bound (index 0 unused, always zero).
  std::span<const std::int64_t> total_row() const { return total_; }
  std::span<const std::int64_t> strict_row() const { return strict_; }
  std::span<const std::int64_t> repeated_row() const { return repeated_; }

 private:
  friend RepCountTable rep_table(std::span<const std::int64_t>, int,
                                 std::int64_t);
  int order_;
  std::int64_t bound_;
  std::vector<std::int64_t> total_, strict_, repeated_;
};

// `set` must be strictly increasing with positive entries; throws
// std::invalid_argument otherwise. Every function below validates.

// Single-n counts. n < 1 or n > 2*h*max(set) short-circuits to 0.
std::int64_t count_total(std::span<const std::int64_t> set, std::int64_t n,
                         int order);
std::int64_t count_strict(std::span<const std::int64_t> set, std::int64_t n,
                          int order);
RepDecomposition decompose(std::span<const std::int64_t> set, std::int64_t n,
                           int order);

// Independent oracle: literal nested loops over non-decreasing tuples,
// testing each sum. Shares no counting logic with count_total/rep_table.
std::int64_t count_total_naive(std::span<const std::int64_t> set,
                               std::int64_t n, int order);

// Full table for n in [1, bound]. For h = 4 this runs a sparse pair-sum
// convolution (ordered 4-tuples as pair-sum pairs) and then converts ordered
// counts to non-decreasing counts by symmetry classes; see repcount.cpp.
RepCountTable rep_table(std::span<const std::int64_t> set, int order,
                        std::int64_t bound);

}  // namespace sidon4

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
#include <optional>
#include <span>
#include <vector>

namespace sidon4 {

// An element b of A is *violating* when some a', a'', a''' in A, all
// strictly below b, satisfy b + a' = a'' + a'''.  The witnesses need not be
// distinct from one another: 3 is violating in {1,2,3,4} because
// 3 + 1 = 2 + 2.  Removing all violating elements in one pass leaves a Sidon
// set: if two different non-decreasing pairs shared a sum, the strictly
// largest element involved would itself be violating (its equation uses only
// smaller elements, possibly with a repeat), so it cannot have survived.

struct ViolationWitness {
  std::int64_t partner = 0;  // a'
  std::int64_t left = 0;     // a''
  std::int64_t right = 0;    // a''',  b + partner == left + right
};

struct ViolationSet {
  std::vector<std::int64_t> elements;           // ascending violating b
  std::vector<ViolationWitness> witnesses;      // parallel, one per element
};

// Two distinct non-decreasing pairs with the same sum.
struct PairCollision {
  std::int64_t sum = 0;
  std::int64_t first_low = 0, first_high = 0;
  std::int64_t second_low = 0, second_high = 0;
};

// Inputs must be strictly increasing with positive entries
// (std::invalid_argument otherwise).  Membership in the violating set is
// decided against the *whole* input, in one pass; no iterative re-pruning.

ViolationSet violating_set(std::span<const std::int64_t> set);

// set minus violating_set(set).elements; always Sidon.
std::vector<std::int64_t> prune(std::span<const std::int64_t> set);

// True iff all pair sums a <= b are distinct.
bool is_sidon(std::span<const std::int64_t> set);

// Smallest sum carrying two distinct non-decreasing pairs, with both pairs;
// std::nullopt for Sidon input.
std::optional<PairCollision> first_violation(std::span<const std::int64_t> set);

}  // namespace sidon4

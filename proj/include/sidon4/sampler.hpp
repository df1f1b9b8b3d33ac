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
#include <string>
#include <vector>

namespace sidon4 {

// Power-law membership probabilities: integer n joins a random set
// independently with probability theta_n = min(1, n^(-num/den)).
// The exponent is kept as a rational so profiles serialize exactly.
//
// The default 5/7 makes the expected count below N grow like (7/2) N^(2/7):
// dense enough that 4-term sums hit every large n, sparse enough that pair
// sums rarely collide, which is the regime the whole experiment lives in.
struct ProbabilityProfile {
  std::int64_t exponent_num = 5;
  std::int64_t exponent_den = 7;

  // Exponent as a double (round-to-nearest; all probability evaluation in
  // this module is plain double arithmetic).
  double exponent() const;

  // "5/7", "0", "-1/2", ... Inverse of parse_profile.
  std::string to_string() const;

  // Throws std::invalid_argument unless exponent_den > 0.
  void validate() const;

  bool operator==(const ProbabilityProfile &) const = default;
};

// Parses "num/den" or a bare integer "num". Throws std::invalid_argument on
// malformed input or den <= 0.
ProbabilityProfile parse_profile(const std::string &text);

// theta_n. Throws std::domain_error for n < 1.
double membership_probability(const ProbabilityProfile &profile,
                              std::int64_t n);

// A realized random set. `elements` is strictly increasing, all in
// [1, bound]. Regenerating with the same (profile, bound, seed) gives the
// same elements; a smaller bound gives exactly the prefix below that bound.
struct SampledSet {
  ProbabilityProfile profile;
  std::int64_t bound = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> elements;
};

// Membership decision for one n, independent of bound: the per-n coin is
// stream_value(seed, n). Throws std::domain_error for n < 1.
bool sample_contains(const ProbabilityProfile &profile, std::int64_t n,
                     std::uint64_t seed);

// Samples {n in [1, bound] : sample_contains(profile, n, seed)}.
// Throws std::domain_error for bound < 1.
SampledSet sample_set(const ProbabilityProfile &profile, std::int64_t bound,
                      std::uint64_t seed);

// Sum of theta_n for n = 1..bound, accumulated in ascending order.
double expected_size(const ProbabilityProfile &profile, std::int64_t bound);

}  // namespace sidon4

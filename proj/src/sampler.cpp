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

#include "sidon4/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "sidon4/rng.hpp"

namespace sidon4 {

double ProbabilityProfile::exponent() const {
  return static_cast<double>(exponent_num) / static_cast<double>(exponent_den);
}

std::string ProbabilityProfile::to_string() const {
  if (exponent_den == 1) return std::to_string(exponent_num);
  return std::to_string(exponent_num) + "/" + std::to_string(exponent_den);
}

void ProbabilityProfile::validate() const {
  if (exponent_den <= 0) {
    throw std::invalid_argument(
        "ProbabilityProfile: exponent denominator must be positive, got " +
        std::to_string(exponent_den));
  }
}

ProbabilityProfile parse_profile(const std::string &text) {
  ProbabilityProfile profile;
  std::size_t slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      profile.exponent_num = std::stoll(text, &used);
      profile.exponent_den = 1;
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      profile.exponent_num = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw std::invalid_argument(text);
      std::string den = text.substr(slash + 1);
      profile.exponent_den = std::stoll(den, &used);
      if (used != den.size()) throw std::invalid_argument(text);
    }
  } catch (const std::exception &) {
    throw std::invalid_argument("cannot parse exponent '" + text +
                                "': expected \"num\" or \"num/den\"");
  }
  profile.validate();
  return profile;
}

double membership_probability(const ProbabilityProfile &profile,
                              std::int64_t n) {
  profile.validate();
  if (n < 1) {
    throw std::domain_error("membership probability undefined for n = " +
                            std::to_string(n));
  }
  double theta = std::pow(static_cast<double>(n), -profile.exponent());
  return theta < 1.0 ? theta : 1.0;
}

bool sample_contains(const ProbabilityProfile &profile, std::int64_t n,
                     std::uint64_t seed) {
  double theta = membership_probability(profile, n);
  return stream_uniform(seed, static_cast<std::uint64_t>(n)) < theta;
}

SampledSet sample_set(const ProbabilityProfile &profile, std::int64_t bound,
                      std::uint64_t seed) {
  profile.validate();
  if (bound < 1) {
    throw std::domain_error("sample bound must be >= 1, got " +
                            std::to_string(bound));
  }
  SampledSet set;
  set.profile = profile;
  set.bound = bound;
  set.seed = seed;
  for (std::int64_t n = 1; n <= bound; ++n) {
    if (sample_contains(profile, n, seed)) set.elements.push_back(n);
  }
  return set;
}

double expected_size(const ProbabilityProfile &profile, std::int64_t bound) {
  profile.validate();
  if (bound < 1) {
    throw std::domain_error("expected_size bound must be >= 1, got " +
                            std::to_string(bound));
  }
  double sum = 0.0;
  for (std::int64_t n = 1; n <= bound; ++n) {
    sum += membership_probability(profile, n);
  }
  return sum;
}

}  // namespace sidon4

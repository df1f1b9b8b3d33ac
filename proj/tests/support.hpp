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

#include <cmath>
#include <cstdint>
#include <vector>

#include "sidon4/rng.hpp"

namespace sidon4::test {

inline double rel_err(double got, double want) {
  const double denom = std::max(std::fabs(want), 1e-300);
  return std::fabs(got - want) / denom;
}

// Deterministic sparse set on [1, value_cap]: value v kept iff its stream
// draw falls under keep_probability. Reproducible everywhere, no <random>.
inline std::vector<std::int64_t> random_set(std::uint64_t seed,
                                            std::int64_t value_cap,
                                            double keep_probability) {
  std::vector<std::int64_t> out;
  for (std::int64_t v = 1; v <= value_cap; ++v) {
    if (stream_uniform(seed, static_cast<std::uint64_t>(v)) < keep_probability)
      out.push_back(v);
  }
  return out;
}

}  // namespace sidon4::test

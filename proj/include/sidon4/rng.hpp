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

namespace sidon4 {

// Counter-based randomness. Every random decision in this project is a pure
// function of (seed, counter...), never of call order. That is what makes
// sampled sets prefix-stable (growing the bound never changes the decision
// for a smaller n) and lets independent trials run in any order or thread.
//
// The mixer is the SplitMix64 finalizer: an invertible 64-bit avalanche
// permutation, statistically solid for this use and cheap.

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

// Value of stream `seed` at position `index`.
inline std::uint64_t stream_value(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed + kGolden * (index + 1));
}

// Derives an unrelated child stream, e.g. one stream per Monte Carlo trial.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t salt) {
  return mix64(seed ^ mix64(salt + kGolden));
}

// Uniform double in [0, 1) with 53 random bits.
inline double to_unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double stream_uniform(std::uint64_t seed, std::uint64_t index) {
  return to_unit_interval(stream_value(seed, index));
}

}  // namespace sidon4

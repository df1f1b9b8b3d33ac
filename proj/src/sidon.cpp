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

#include "sidon4/sidon.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sidon4 {

namespace {

void check_set(std::span<const std::int64_t> set) {
  std::int64_t prev = 0;
  for (std::int64_t a : set) {
    if (a <= prev) {
      throw std::invalid_argument(
          "set must be strictly increasing with positive entries");
    }
    prev = a;
  }
}

struct PairRecord {
  std::int64_t low = 0, high = 0;
};

}  // namespace

ViolationSet violating_set(std::span<const std::int64_t> set) {
  check_set(set);
  ViolationSet out;
  if (set.size() < 2) return out;

  // Process elements in ascending order. When b is examined the map holds,
  // for every sum a'' + a''' over elements strictly below b, the first pair
  // recorded for it (earliest low coordinate); that makes witnesses
  // deterministic. a'' == a''' pairs are included.
  std::unordered_map<std::int64_t, PairRecord> pair_by_sum;
  pair_by_sum.reserve(set.size() * set.size() / 2 + 1);

  for (std::size_t bi = 0; bi < set.size(); ++bi) {
    std::int64_t b = set[bi];
    for (std::size_t ai = 0; ai < bi; ++ai) {
      auto hit = pair_by_sum.find(b + set[ai]);
      if (hit != pair_by_sum.end()) {
        out.elements.push_back(b);
        out.witnesses.push_back(
            {set[ai], hit->second.low, hit->second.high});
        break;  // first partner in ascending order; one witness per element
      }
    }
    // Now b is allowed in later witnesses: add its pair sums, keeping the
    // first-recorded pair for each sum.
    for (std::size_t ai = 0; ai <= bi; ++ai) {
      pair_by_sum.try_emplace(set[ai] + b, PairRecord{set[ai], b});
    }
  }
  return out;
}

std::vector<std::int64_t> prune(std::span<const std::int64_t> set) {
  ViolationSet bad = violating_set(set);
  std::vector<std::int64_t> out;
  out.reserve(set.size() - bad.elements.size());
  std::size_t cursor = 0;
  for (std::int64_t a : set) {
    if (cursor < bad.elements.size() && bad.elements[cursor] == a) {
      ++cursor;
      continue;
    }
    out.push_back(a);
  }
  return out;
}

bool is_sidon(std::span<const std::int64_t> set) {
  check_set(set);
  std::unordered_set<std::int64_t> seen;
  seen.reserve(set.size() * set.size() / 2 + 1);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i; j < set.size(); ++j) {
      if (!seen.insert(set[i] + set[j]).second) return false;
    }
  }
  return true;
}

std::optional<PairCollision> first_violation(
    std::span<const std::int64_t> set) {
  check_set(set);
  std::unordered_map<std::int64_t, PairRecord> first_pair;
  first_pair.reserve(set.size() * set.size() / 2 + 1);
  std::optional<PairCollision> best;
  // Lexicographic enumeration (low ascending, then high): the recorded pair
  // for each sum is the lexicographically first one, so the reported
  // collision is canonical.
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i; j < set.size(); ++j) {
      std::int64_t s = set[i] + set[j];
      auto [it, inserted] = first_pair.try_emplace(s, PairRecord{set[i], set[j]});
      if (inserted) continue;
      if (!best || s < best->sum) {
        best = PairCollision{s, it->second.low, it->second.high, set[i],
                             set[j]};
      }
    }
  }
  return best;
}

}  // namespace sidon4

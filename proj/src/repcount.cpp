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

#include "sidon4/repcount.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sidon4/errors.hpp"

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

void check_order(int order) {
  if (order < 2 || order > 4) {
    throw UnsupportedOrderError("representation order " +
                                std::to_string(order) +
                                " unsupported (need 2, 3 or 4)");
  }
}

// n outside (0, 2*h*max] counts as zero by contract; anything above h*max is
// zero anyway, the doubled guard just keeps the short-circuit conservative.
bool trivially_zero(std::span<const std::int64_t> set, std::int64_t n,
                    int order) {
  if (set.empty()) return true;
  if (n < 1) return true;
  return n > 2 * static_cast<std::int64_t>(order) * set.back();
}

bool set_has(std::span<const std::int64_t> set, std::int64_t value) {
  return std::binary_search(set.begin(), set.end(), value);
}

[[noreturn]] void overflow() {
  throw std::overflow_error("representation count exceeds 64-bit range");
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) overflow();
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) overflow();
  return out;
}

// Single-n counters: outer loops over the smaller coordinates, last
// coordinate by binary search. strict==true demands a_1 < ... < a_h.
std::int64_t count_single(std::span<const std::int64_t> set, std::int64_t n,
                          int order, bool strict) {
  std::int64_t count = 0;
  std::size_t size = set.size();
  auto tail_ok = [&](std::int64_t lower, std::int64_t rest) {
    return strict ? rest > lower : rest >= lower;
  };
  if (order == 2) {
    for (std::size_t i = 0; i < size; ++i) {
      std::int64_t rest = n - set[i];
      if (!tail_ok(set[i], rest)) break;
      if (set_has(set, rest)) ++count;
    }
    return count;
  }
  if (order == 3) {
    for (std::size_t i = 0; i < size; ++i) {
      if (set[i] * 3 > n) break;
      for (std::size_t j = strict ? i + 1 : i; j < size; ++j) {
        std::int64_t rest = n - set[i] - set[j];
        if (!tail_ok(set[j], rest)) break;
        if (set_has(set, rest)) ++count;
      }
    }
    return count;
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (set[i] * 4 > n) break;
    for (std::size_t j = strict ? i + 1 : i; j < size; ++j) {
      if (set[i] + set[j] * 3 > n) break;
      for (std::size_t k = strict ? j + 1 : j; k < size; ++k) {
        std::int64_t rest = n - set[i] - set[j] - set[k];
        if (!tail_ok(set[k], rest)) break;
        if (set_has(set, rest)) ++count;
      }
    }
  }
  return count;
}

// --- full-table machinery -------------------------------------------------
//
// For the table we count ordered tuples by convolution, then convert to
// non-decreasing tuples. Write ordered counts constant on the blocks of a
// set partition of the coordinate positions:
//
//   pow1[s] = #{a in A : a = s}              pow2[s] = #{a : 2a = s}   etc.
//   ord2 = pow1 * pow1 (ordered pairs), ord4 = ord2 * ord2 (ordered 4-tuples)
//
// Ordered tuples with all coordinates distinct follow from Moebius inversion
// over the partition lattice of the positions.  For 4 positions:
//
//   distinct_ord4 = ord4 - 6*C211 + 3*C22 + 8*C31 - 6*C4
//
// where C211[n] = #{(u,v,w): 2u+v+w=n}, C22[n] = #{(u,v): 2u+2v=n},
// C31[n] = #{(u,v): 3u+v=n}, C4[n] = #{u: 4u=n}  (all coordinates free in A;
// 6,3,4,1 partitions of each shape and Moebius weights +-1, +1, +2, -6).
// Strict tuples are distinct_ord4 / 4!.  The multiset count adds one term
// per equality shape:
//
//   total = distinct_ord4/24            (shape 1+1+1+1)
//         + (C211 - C22 - 2*C31 + 2*C4)/2   (shape 2+1+1, unordered pair {v,w})
//         + (C22 - C4)/2                    (shape 2+2)
//         + (C31 - C4)                      (shape 3+1)
//         + C4                              (shape 4)
//
// The inner subtractions are the same inversion one level down (they remove
// coincidences among the free coordinates of each shape).  For 3 positions
// the same scheme is: distinct_ord3 = ord3 - 3*C21 + 2*C3, strict = /6,
// total = distinct_ord3/6 + C21.
//
// Everything is a sparse convolution over realized sums, so cost tracks the
// number of distinct pair sums, not bound^2.  That is why sampled sets
// (a few hundred elements below 1e6) stay fast.

struct SparseCounts {
  std::vector<std::int64_t> sums;    // ascending distinct sums
  std::vector<std::int64_t> counts;  // parallel multiplicities
};

// Ordered pair-sum multiplicities of A x A, clipped to sums <= bound.
SparseCounts ordered_pair_sums(std::span<const std::int64_t> set,
                               std::int64_t bound) {
  std::vector<std::int64_t> dense(static_cast<std::size_t>(bound) + 1, 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] * 2 > bound) break;
    for (std::size_t j = i; j < set.size(); ++j) {
      std::int64_t s = set[i] + set[j];
      if (s > bound) break;
      dense[static_cast<std::size_t>(s)] += (i == j) ? 1 : 2;
    }
  }
  SparseCounts out;
  for (std::int64_t s = 0; s <= bound; ++s) {
    if (dense[static_cast<std::size_t>(s)] != 0) {
      out.sums.push_back(s);
      out.counts.push_back(dense[static_cast<std::size_t>(s)]);
    }
  }
  return out;
}

void fill_order2(std::span<const std::int64_t> set, std::int64_t bound,
                 std::vector<std::int64_t> &total,
                 std::vector<std::int64_t> &strict) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i] * 2 > bound) break;
    for (std::size_t j = i; j < set.size(); ++j) {
      std::int64_t s = set[i] + set[j];
      if (s > bound) break;
      auto idx = static_cast<std::size_t>(s);
      total[idx] = checked_add(total[idx], 1);
      if (i != j) strict[idx] = checked_add(strict[idx], 1);
    }
  }
}

void fill_order3(std::span<const std::int64_t> set, std::int64_t bound,
                 std::vector<std::int64_t> &total,
                 std::vector<std::int64_t> &strict) {
  SparseCounts pairs = ordered_pair_sums(set, bound);
  // ord3 = pow1 * ord2
  std::vector<std::int64_t> ord3(static_cast<std::size_t>(bound) + 1, 0);
  for (std::int64_t a : set) {
    if (a + 2 > bound) break;
    for (std::size_t p = 0; p < pairs.sums.size(); ++p) {
      std::int64_t s = a + pairs.sums[p];
      if (s > bound) break;
      auto idx = static_cast<std::size_t>(s);
      ord3[idx] = checked_add(ord3[idx], pairs.counts[p]);
    }
  }
  // C21[n] = #{(u,v): 2u+v=n}; C3[n] = #{u: 3u=n}
  std::vector<std::int64_t> c21(static_cast<std::size_t>(bound) + 1, 0);
  for (std::int64_t u : set) {
    if (2 * u + 1 > bound) break;
    for (std::int64_t v : set) {
      std::int64_t s = 2 * u + v;
      if (s > bound) break;
      ++c21[static_cast<std::size_t>(s)];
    }
  }
  for (std::int64_t n = 1; n <= bound; ++n) {
    auto idx = static_cast<std::size_t>(n);
    std::int64_t c3 = (n % 3 == 0 && set_has(set, n / 3)) ? 1 : 0;
    __int128 distinct_ord =
        static_cast<__int128>(ord3[idx]) - 3 * static_cast<__int128>(c21[idx]) +
        2 * static_cast<__int128>(c3);
    if (distinct_ord % 6 != 0) {
      throw std::logic_error("order-3 symmetry accounting out of balance");
    }
    __int128 s = distinct_ord / 6;
    __int128 t = s + c21[idx];
    if (s < 0 || t < 0 || t > INT64_MAX) overflow();
    strict[idx] = static_cast<std::int64_t>(s);
    total[idx] = static_cast<std::int64_t>(t);
  }
}

void fill_order4(std::span<const std::int64_t> set, std::int64_t bound,
                 std::vector<std::int64_t> &total,
                 std::vector<std::int64_t> &strict) {
  SparseCounts pairs = ordered_pair_sums(set, bound);
  std::size_t m = pairs.sums.size();
  // ord4 = ord2 * ord2, symmetric loop over the sparse support.
  std::vector<std::int64_t> ord4(static_cast<std::size_t>(bound) + 1, 0);
  for (std::size_t p = 0; p < m; ++p) {
    std::int64_t sp = pairs.sums[p];
    if (sp * 2 > bound) break;
    for (std::size_t q = p; q < m; ++q) {
      std::int64_t s = sp + pairs.sums[q];
      if (s > bound) break;
      std::int64_t contrib = checked_mul(pairs.counts[p], pairs.counts[q]);
      if (p != q) contrib = checked_mul(contrib, 2);
      auto idx = static_cast<std::size_t>(s);
      ord4[idx] = checked_add(ord4[idx], contrib);
    }
  }
  // C211[n] = #{(u,v,w): 2u+v+w=n} = sum_u ord2[n-2u]
  std::vector<std::int64_t> c211(static_cast<std::size_t>(bound) + 1, 0);
  for (std::int64_t u : set) {
    if (2 * u + 2 > bound) break;
    for (std::size_t p = 0; p < m; ++p) {
      std::int64_t s = 2 * u + pairs.sums[p];
      if (s > bound) break;
      auto idx = static_cast<std::size_t>(s);
      c211[idx] = checked_add(c211[idx], pairs.counts[p]);
    }
  }
  // C31[n] = #{(u,v): 3u+v=n}
  std::vector<std::int64_t> c31(static_cast<std::size_t>(bound) + 1, 0);
  for (std::int64_t u : set) {
    if (3 * u + 1 > bound) break;
    for (std::int64_t v : set) {
      std::int64_t s = 3 * u + v;
      if (s > bound) break;
      ++c31[static_cast<std::size_t>(s)];
    }
  }
  auto ord2_at = [&](std::int64_t s) -> std::int64_t {
    auto it = std::lower_bound(pairs.sums.begin(), pairs.sums.end(), s);
    if (it == pairs.sums.end() || *it != s) return 0;
    return pairs.counts[static_cast<std::size_t>(it - pairs.sums.begin())];
  };
  for (std::int64_t n = 1; n <= bound; ++n) {
    auto idx = static_cast<std::size_t>(n);
    std::int64_t c22 = (n % 2 == 0) ? ord2_at(n / 2) : 0;
    std::int64_t c4 = (n % 4 == 0 && set_has(set, n / 4)) ? 1 : 0;
    __int128 distinct_ord = static_cast<__int128>(ord4[idx]) -
                            6 * static_cast<__int128>(c211[idx]) +
                            3 * static_cast<__int128>(c22) +
                            8 * static_cast<__int128>(c31[idx]) -
                            6 * static_cast<__int128>(c4);
    __int128 pair_free = static_cast<__int128>(c211[idx]) - c22 -
                         2 * static_cast<__int128>(c31[idx]) + 2 * c4;
    if (distinct_ord % 24 != 0 || pair_free % 2 != 0 || (c22 - c4) % 2 != 0) {
      throw std::logic_error("order-4 symmetry accounting out of balance");
    }
    __int128 s = distinct_ord / 24;
    __int128 t = s + pair_free / 2 + (c22 - c4) / 2 + (c31[idx] - c4) + c4;
    if (s < 0 || t < 0 || t > INT64_MAX) overflow();
    strict[idx] = static_cast<std::int64_t>(s);
    total[idx] = static_cast<std::int64_t>(t);
  }
}

}  // namespace

RepCountTable::RepCountTable(int order, std::int64_t bound)
    : order_(order), bound_(bound) {
  check_order(order);
  if (bound < 1) {
    throw std::invalid_argument("table bound must be >= 1, got " +
                                std::to_string(bound));
  }
  total_.assign(static_cast<std::size_t>(bound) + 1, 0);
  strict_.assign(static_cast<std::size_t>(bound) + 1, 0);
  repeated_.assign(static_cast<std::size_t>(bound) + 1, 0);
}

std::int64_t RepCountTable::total(std::int64_t n) const {
  if (n < 1 || n > bound_) throw std::out_of_range("n outside table bound");
  return total_[static_cast<std::size_t>(n)];
}

std::int64_t RepCountTable::strict(std::int64_t n) const {
  if (n < 1 || n > bound_) throw std::out_of_range("n outside table bound");
  return strict_[static_cast<std::size_t>(n)];
}

std::int64_t RepCountTable::repeated(std::int64_t n) const {
  if (n < 1 || n > bound_) throw std::out_of_range("n outside table bound");
  return repeated_[static_cast<std::size_t>(n)];
}

std::int64_t count_total(std::span<const std::int64_t> set, std::int64_t n,
                         int order) {
  check_order(order);
  check_set(set);
  if (trivially_zero(set, n, order)) return 0;
  return count_single(set, n, order, /*strict=*/false);
}

std::int64_t count_strict(std::span<const std::int64_t> set, std::int64_t n,
                          int order) {
  check_order(order);
  check_set(set);
  if (trivially_zero(set, n, order)) return 0;
  return count_single(set, n, order, /*strict=*/true);
}

RepDecomposition decompose(std::span<const std::int64_t> set, std::int64_t n,
                           int order) {
  RepDecomposition d;
  d.total = count_total(set, n, order);
  d.strict = count_strict(set, n, order);
  d.repeated = d.total - d.strict;
  return d;
}

std::int64_t count_total_naive(std::span<const std::int64_t> set,
                               std::int64_t n, int order) {
  check_order(order);
  check_set(set);
  std::size_t size = set.size();
  std::int64_t count = 0;
  if (order == 2) {
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i; j < size; ++j)
        if (set[i] + set[j] == n) ++count;
  } else if (order == 3) {
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i; j < size; ++j)
        for (std::size_t k = j; k < size; ++k)
          if (set[i] + set[j] + set[k] == n) ++count;
  } else {
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i; j < size; ++j)
        for (std::size_t k = j; k < size; ++k)
          for (std::size_t l = k; l < size; ++l)
            if (set[i] + set[j] + set[k] + set[l] == n) ++count;
  }
  return count;
}

RepCountTable rep_table(std::span<const std::int64_t> set, int order,
                        std::int64_t bound) {
  check_order(order);
  check_set(set);
  RepCountTable table(order, bound);
  if (!set.empty()) {
    switch (order) {
      case 2:
        fill_order2(set, bound, table.total_, table.strict_);
        break;
      case 3:
        fill_order3(set, bound, table.total_, table.strict_);
        break;
      default:
        fill_order4(set, bound, table.total_, table.strict_);
        break;
    }
  }
  for (std::int64_t n = 0; n <= bound; ++n) {
    auto idx = static_cast<std::size_t>(n);
    table.repeated_[idx] = table.total_[idx] - table.strict_[idx];
  }
  return table;
}

}  // namespace sidon4

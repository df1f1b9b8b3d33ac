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
#include <utility>
#include <vector>

#include "sidon4/sampler.hpp"

namespace sidon4 {

// Analytic expectation machinery for theta-weighted counting sums.
// Everything here is deterministic numerics: fixed ascending summation
// order, compensated accumulation on the long loops, double precision.

// sum_{n=1}^{limit-1} n^alpha (limit-n)^beta.
// Throws std::domain_error unless limit >= 3, alpha > -1 and beta > -1
// (at or below -1 the corresponding endpoint is non-summable in the
// continuum comparison and the normalized ratio loses meaning).
double power_sum(std::int64_t limit, double alpha, double beta);

// The same sum normalized by limit^(alpha+beta+1); as limit grows the ratio
// approaches the Euler Beta integral B(alpha+1, beta+1).
struct PowerSumRatio {
  double alpha = 0.0;
  double beta = 0.0;
  std::int64_t limit = 0;
  double sum = 0.0;
  double ratio = 0.0;
};

// Cross product alphas x betas x limits, in that nesting order.
std::vector<PowerSumRatio> power_sum_ratio_profile(
    std::span<const double> alphas, std::span<const double> betas,
    std::span<const std::int64_t> limits);

// E( sum over solutions of prod theta_{y_i} ) for one linear equation
//   sum_i coefficients[i] * y_i = target,   y_i >= 1 integer,
// optionally with strict order constraints y_first < y_second and/or all-
// distinct. Coefficients all of one sign give a finite family, summed
// exactly. Mixed signs give an infinite family: terms are enumerated by
// increasing total of the negative-coefficient variables and the sum stops
// once a comparison-integral bound on the remaining tail drops below
// epsilon, so the returned value is a lower approximation within epsilon.
struct LinearConstraintSystem {
  std::vector<std::int64_t> coefficients;  // 1..4 entries, all nonzero
  std::int64_t target = 0;
  std::vector<std::pair<int, int>> strict_less;  // 0-based variable slots
  bool distinct = false;
  ProbabilityProfile profile{};
  double epsilon = 1e-9;
};

// Throws: std::invalid_argument (malformed system), DivergenceError (the
// comparison exponent certifies no finite tail; e.g. four variables of mixed
// sign at the default profile), EnumerationLimitError (epsilon unreachable
// within term_budget; the message reports the bound reached).
double constrained_expectation(const LinearConstraintSystem &system,
                               std::int64_t term_budget = 50'000'000);

// E(r_4(A, n)) for the random set with the given profile:
//   sum over x1<x2<x3<x4, x1+x2+x3+x4 = n of theta_{x1}...theta_{x4}.
// kEnumerate walks the quadruples directly (refuses above enumerate_cap);
// kConvolution computes the 4-fold theta convolution of ordered tuples and
// removes equal-coordinate patterns by inclusion-exclusion over the 15
// coordinate partitions, dividing by 4!. Methods agree to ~1e-12 relative.
enum class R4Method { kEnumerate, kConvolution };

double expected_r4(const ProbabilityProfile &profile, std::int64_t n,
                   R4Method method, std::int64_t enumerate_cap = 2000);

// Six theta-weighted sums coupling an ordered 4-part composition
// x1+x2+x3+x4 = n with one extra additive collision among auxiliary
// variables. All tuples are ordered, all variables independent positive
// integers, and the theta product runs over the listed variables with
// multiplicity (no distinctness is imposed, so each sum dominates its
// all-distinct counterpart).
//
//   case 1:  x4 + x5 = x6 + x7, with x5 in [1, x4) and (x6, x7) any
//            ordered positive pair (weight theta of all seven variables)
//   case 2:  x3 + x4 = x5 + x6, (x5, x6) any ordered positive pair
//   case 3:  x4 + x5 = x3 + x6, x5 in [1, x4), x6 determined, terms with
//            x6 < 1 vanish
//   case 4:  x3 + x4 = x2 + x5, x5 determined
//   case 5:  x4 + x5 = x2 + x3, x5 determined (equal to case 4 under the
//            relabeling x2 <-> x4)
//   case 6:  x3 + x4 = x1 + x2 (forces both pair sums to n/2; zero for odd n)
//
// The inner ranges of cases 1 and 3 carry the x5 < x4 restriction of the
// solution tuples these sums bound; without that cutoff both are open-ended
// in x5 and only settle with x5^(-8/7) tails.
double interaction_sum(int case_id, std::int64_t n,
                       const ProbabilityProfile &profile);

}  // namespace sidon4

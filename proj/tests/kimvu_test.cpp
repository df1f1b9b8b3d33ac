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

#include "sidon4/kimvu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "sidon4/errors.hpp"
#include "sidon4/expectations.hpp"
#include "support.hpp"

using namespace sidon4;
using sidon4::test::rel_err;

namespace {

// A raw, possibly redundant term list plus a full price table. The oracles
// below evaluate the raw list directly, so library canonicalization is under
// test rather than assumed.
struct RandomPolyFixture {
  std::vector<Monomial> raw;
  std::map<std::int64_t, double> prices;
};

constexpr std::int64_t kUniverse = 10;

RandomPolyFixture make_random_poly(std::uint64_t seed) {
  RandomPolyFixture fixture;
  std::uint64_t idx = 0;
  auto next = [&] { return stream_value(seed, idx++); };
  auto unif = [&] { return stream_uniform(seed, idx++); };
  const int monomial_count = 1 + static_cast<int>(next() % 5);
  for (int m = 0; m < monomial_count; ++m) {
    Monomial term;
    const int len = 1 + static_cast<int>(next() % 5);
    for (int j = 0; j < len; ++j) {
      term.variables.push_back(1 + static_cast<std::int64_t>(next() % kUniverse));
    }
    term.coefficient = 0.1 + 3.0 * unif();
    fixture.raw.push_back(std::move(term));
  }
  for (std::int64_t v = 1; v <= kUniverse; ++v) fixture.prices[v] = unif();
  return fixture;
}

double raw_value(const std::vector<Monomial> &raw, std::uint64_t mask) {
  double value = 0.0;
  for (const Monomial &term : raw) {
    bool on = true;
    for (std::int64_t v : term.variables) {
      if (((mask >> (v - 1)) & 1u) == 0u) {
        on = false;
        break;
      }
    }
    if (on) value += term.coefficient;
  }
  return value;
}

// E(Y) by summing the raw list over all 2^kUniverse boolean assignments.
double brute_expectation(const RandomPolyFixture &fixture) {
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (1ull << kUniverse); ++mask) {
    long double weight = 1.0L;
    for (std::int64_t v = 1; v <= kUniverse; ++v) {
      const double p = fixture.prices.at(v);
      weight *= ((mask >> (v - 1)) & 1u) ? p : (1.0 - p);
    }
    total += weight * raw_value(fixture.raw, mask);
  }
  return static_cast<double>(total);
}

// E(d^S Y) from first principles: terms whose distinct support contains S
// contribute coefficient times the price product over the leftover support.
double brute_derivative_expectation(const RandomPolyFixture &fixture,
                                    const std::set<std::int64_t> &subset) {
  long double total = 0.0L;
  for (const Monomial &term : fixture.raw) {
    const std::set<std::int64_t> support(term.variables.begin(),
                                         term.variables.end());
    if (!std::includes(support.begin(), support.end(), subset.begin(),
                       subset.end())) {
      continue;
    }
    long double prod = term.coefficient;
    for (std::int64_t v : support) {
      if (!subset.count(v)) prod *= fixture.prices.at(v);
    }
    total += prod;
  }
  return static_cast<double>(total);
}

MultilinearPolynomial single_term(std::vector<std::int64_t> vars,
                                  double coefficient) {
  return MultilinearPolynomial::from_monomials(
      {Monomial{std::move(vars), coefficient}});
}

}  // namespace

TEST_CASE("monomial canonicalization") {
  const MultilinearPolynomial p = MultilinearPolynomial::from_monomials(
      {Monomial{{3, 1, 1}, 1.5}, Monomial{{1, 3}, 1.0}, Monomial{{2}, 0.5}});
  REQUIRE(p.monomials().size() == 2);
  CHECK(p.monomials()[0].variables == std::vector<std::int64_t>{1, 3});
  CHECK(p.monomials()[0].coefficient == 2.5);  // merged after t^2 = t
  CHECK(p.monomials()[1].variables == std::vector<std::int64_t>{2});
  CHECK(p.degree() == 2);
  CHECK_FALSE(p.is_zero());
  CHECK(p.variables() == std::vector<std::int64_t>{1, 2, 3});

  const MultilinearPolynomial constant = single_term({}, 4.0);
  CHECK(constant.degree() == 0);
  CHECK_FALSE(constant.is_zero());
  CHECK(constant.variables().empty());

  CHECK(MultilinearPolynomial{}.is_zero());
  CHECK(MultilinearPolynomial{}.degree() == 0);

  const MultilinearPolynomial sum = p + single_term({2}, 1.5);
  REQUIRE(sum.monomials().size() == 2);
  CHECK(sum.monomials()[1].coefficient == 2.0);

  CHECK_THROWS_AS(single_term({1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(single_term({1}, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(single_term({0, 2}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(single_term({-3}, 1.0), std::invalid_argument);
}

TEST_CASE("expectation matches boolean enumeration") {
  const VariableSpace half =
      VariableSpace::from_map({{1, 0.5}, {2, 0.5}, {3, 1.0}});
  CHECK(expectation(single_term({1, 2}, 1.0), half) == 0.25);
  CHECK(expectation(single_term({3}, 0.5), half) == 0.5);
  CHECK(expectation(single_term({}, 2.0), half) == 2.0);
  CHECK(expectation(MultilinearPolynomial{}, half) == 0.0);

  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const RandomPolyFixture fixture = make_random_poly(seed);
    const MultilinearPolynomial poly =
        MultilinearPolynomial::from_monomials(fixture.raw);
    const VariableSpace space = VariableSpace::from_map(fixture.prices);
    CHECK(rel_err(expectation(poly, space), brute_expectation(fixture)) < 1e-12);
  }

  CHECK_THROWS_AS(expectation(single_term({7}, 1.0), half), std::out_of_range);
  CHECK_THROWS_AS(VariableSpace::from_map({{1, 1.5}}), std::invalid_argument);
  CHECK_THROWS_AS(VariableSpace::from_map({{1, -0.25}}), std::invalid_argument);

  const VariableSpace priced = VariableSpace::from_profile({});
  for (std::int64_t n : {1, 2, 77, 4096}) {
    CHECK(priced.probability(n) == membership_probability({}, n));
  }
}

TEST_CASE("formal derivatives") {
  const MultilinearPolynomial tri = MultilinearPolynomial::from_monomials(
      {Monomial{{1, 2}, 1.0}, Monomial{{2, 3}, 1.0}, Monomial{{1, 3}, 1.0}});

  const MultilinearPolynomial d2 = derivative(tri, {{2, 1}});
  REQUIRE(d2.monomials().size() == 2);
  CHECK(d2.monomials()[0].variables == std::vector<std::int64_t>{1});
  CHECK(d2.monomials()[1].variables == std::vector<std::int64_t>{3});

  CHECK(derivative(tri, {{1, 2}}).is_zero());   // order two kills t_1
  CHECK(derivative(tri, {{9, 1}}).is_zero());   // absent variable
  const MultilinearPolynomial d12 = derivative(tri, {{1, 1}, {2, 1}});
  REQUIRE(d12.monomials().size() == 1);
  CHECK(d12.monomials()[0].variables.empty());
  CHECK(d12.monomials()[0].coefficient == 1.0);
  const VariableSpace any = VariableSpace::from_map({{1, 0.1}, {2, 0.9}, {3, 0.4}});
  CHECK(expectation(d12, any) == 1.0);
  // Empty alpha is the identity.
  CHECK(expectation(derivative(tri, {}), any) == expectation(tri, any));

  CHECK_THROWS_AS(derivative(tri, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(derivative(tri, {{1, 0}}), std::invalid_argument);

  for (std::uint64_t seed = 40; seed < 55; ++seed) {
    const RandomPolyFixture fixture = make_random_poly(seed);
    const MultilinearPolynomial poly =
        MultilinearPolynomial::from_monomials(fixture.raw);
    const VariableSpace space = VariableSpace::from_map(fixture.prices);
    std::uint64_t idx = 1000;
    for (int draw = 0; draw < 6; ++draw) {
      std::set<std::int64_t> subset;
      const int len = static_cast<int>(stream_value(seed, idx++) % 4);
      while (static_cast<int>(subset.size()) < len) {
        subset.insert(1 + static_cast<std::int64_t>(stream_value(seed, idx++) %
                                                    kUniverse));
      }
      DerivativeIndex alpha;
      for (std::int64_t v : subset) alpha[v] = 1;
      const double want = brute_derivative_expectation(fixture, subset);
      const double got = expectation(derivative(poly, alpha), space);
      if (want == 0.0) {
        CHECK(got == 0.0);
      } else {
        CHECK(rel_err(got, want) < 1e-12);
      }
    }
  }
}

TEST_CASE("derivative maxima over multi indices") {
  const MultilinearPolynomial pair = single_term({1, 2}, 1.0);
  const VariableSpace half = VariableSpace::from_map({{1, 0.5}, {2, 0.5}});
  CHECK(max_derivative_expectation(pair, half, 0) == 0.25);
  CHECK(max_derivative_expectation(pair, half, 1) == 0.5);
  CHECK(max_derivative_expectation(pair, half, 2) == 1.0);
  CHECK(max_derivative_expectation(pair, half, 3) == 0.0);
  CHECK(max_derivative_expectation(pair, half, 11) == 0.0);

  CHECK(max_derivative_expectation_from(pair, half, 0) == 1.0);
  CHECK(max_derivative_expectation_from(pair, half, 2) == 1.0);
  CHECK(max_derivative_expectation_from(pair, half, 3) == 0.0);

  for (std::uint64_t seed = 60; seed < 66; ++seed) {
    const RandomPolyFixture fixture = make_random_poly(seed);
    const MultilinearPolynomial poly =
        MultilinearPolynomial::from_monomials(fixture.raw);
    const VariableSpace space = VariableSpace::from_map(fixture.prices);
    // d = 0 admits only the empty index, so the max is E(Y) itself.
    CHECK(max_derivative_expectation(poly, space, 0) ==
          expectation(poly, space));
    double previous = max_derivative_expectation_from(poly, space, 0);
    for (int d = 1; d <= poly.degree() + 1; ++d) {
      const double from_d = max_derivative_expectation_from(poly, space, d);
      CHECK(from_d <= previous);
      CHECK(from_d >= max_derivative_expectation(poly, space, d));
      previous = from_d;
    }
    CHECK(max_derivative_expectation(poly, space, poly.degree() + 1) == 0.0);
  }

  const MultilinearPolynomial wide = build_r4_polynomial(60);
  const VariableSpace priced = VariableSpace::from_profile({});
  CHECK_THROWS_AS(max_derivative_expectation(wide, priced, 2, 3),
                  EnumerationLimitError);
  CHECK_THROWS_AS(max_derivative_expectation(pair, half, -1),
                  std::domain_error);
}

TEST_CASE("concentration threshold and tail bound") {
  const MultilinearPolynomial unit = single_term({1}, 1.0);
  const VariableSpace sure = VariableSpace::from_map({{1, 1.0}});
  ConcentrationQuery query;
  query.lambda = 1.0;
  query.k = 1;
  // E_{>=0} = E_{>=1} = 1, so the threshold collapses to C_k lambda^(1/2 - 0).
  CHECK(concentration_threshold(unit, sure, query) == 1.0);
  query.lambda = 4.0;
  CHECK(rel_err(concentration_threshold(unit, sure, query), 2.0) < 1e-15);
  query.c_k = 3.0;
  CHECK(rel_err(concentration_threshold(unit, sure, query), 6.0) < 1e-15);

  // k = 0 in the query means "use the polynomial degree".
  const MultilinearPolynomial cube = single_term({1, 2, 3}, 1.0);
  const VariableSpace third =
      VariableSpace::from_map({{1, 0.3}, {2, 0.3}, {3, 0.3}});
  ConcentrationQuery defaulted;
  defaulted.lambda = 2.7;
  ConcentrationQuery explicit_k = defaulted;
  explicit_k.k = 3;
  CHECK(concentration_threshold(cube, third, defaulted) ==
        concentration_threshold(cube, third, explicit_k));

  defaulted.lambda = 0.0;
  CHECK_THROWS_AS(concentration_threshold(cube, third, defaulted),
                  std::domain_error);

  // lambda = 20 ln n with k = 4 gives exactly n^(k-1-5) = n^-2.
  ConcentrationQuery tail;
  tail.n = 50;
  tail.k = 4;
  tail.lambda = 20.0 * std::log(50.0);
  CHECK(rel_err(tail_probability_bound(tail), 1.0 / 2500.0) < 1e-12);
  tail.n = 400;
  tail.k = 7;
  tail.lambda = 32.0 * std::log(400.0);
  CHECK(rel_err(tail_probability_bound(tail), 1.0 / 160000.0) < 1e-12);

  tail.k = 0;
  CHECK_THROWS_AS(tail_probability_bound(tail), std::domain_error);
  tail.k = 2;
  tail.n = 0;
  CHECK_THROWS_AS(tail_probability_bound(tail), std::domain_error);
  tail.n = 10;
  tail.lambda = -1.0;
  CHECK_THROWS_AS(tail_probability_bound(tail), std::domain_error);
}

TEST_CASE("counting polynomial builders") {
  const MultilinearPolynomial ten = build_r4_polynomial(10);
  REQUIRE(ten.monomials().size() == 1);
  CHECK(ten.monomials()[0].variables == std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(ten.monomials()[0].coefficient == 1.0);
  CHECK(build_r4_polynomial(9).is_zero());

  const MultilinearPolynomial fourteen = build_r4_polynomial(14);
  REQUIRE(fourteen.monomials().size() == 5);
  for (const Monomial &term : fourteen.monomials()) {
    CHECK(term.coefficient == 1.0);
    REQUIRE(term.variables.size() == 4);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      sum += term.variables[i];
      if (i > 0) CHECK(term.variables[i] > term.variables[i - 1]);
    }
    CHECK(sum == 14);
  }

  const VariableSpace priced = VariableSpace::from_profile({});
  for (std::int64_t n : {10, 50, 137}) {
    CHECK(rel_err(expectation(build_r4_polynomial(n), priced),
                  expected_r4({}, n, R4Method::kEnumerate)) < 1e-12);
  }

  const MultilinearPolynomial viol = build_violation_polynomial(10);
  REQUIRE(viol.monomials().size() == 1);
  CHECK(viol.monomials()[0].variables ==
        std::vector<std::int64_t>{1, 2, 3, 4});
  CHECK(viol.monomials()[0].coefficient == 3.0);
  CHECK(build_violation_polynomial(9).is_zero());
  CHECK_THROWS_AS(build_violation_polynomial(300), EnumerationLimitError);
  // Tightening the cap below n refuses; an explicit cap at n proceeds.
  CHECK_THROWS_AS(build_violation_polynomial(60, 50), EnumerationLimitError);
  CHECK(build_violation_polynomial(60, 60).degree() >= 4);

  // Full reduced-tuple catalogue at n = 16 against a literal 7-tuple walk.
  std::map<std::vector<std::int64_t>, double> want;
  const std::int64_t n = 16;
  for (std::int64_t x1 = 1; x1 <= n; ++x1) {
    for (std::int64_t x2 = x1 + 1; x2 <= n; ++x2) {
      for (std::int64_t x3 = x2 + 1; x3 <= n; ++x3) {
        const std::int64_t x4 = n - x1 - x2 - x3;
        if (x4 <= x3) continue;
        for (std::int64_t x5 = 1; x5 < x4; ++x5) {
          for (std::int64_t x6 = 1; x6 < x4; ++x6) {
            const std::int64_t x7 = x4 + x5 - x6;
            if (x7 < 1 || x7 >= x4) continue;
            std::set<std::int64_t> support{x1, x2, x3, x4, x5, x6, x7};
            want[std::vector<std::int64_t>(support.begin(), support.end())] +=
                1.0;
          }
        }
      }
    }
  }
  const MultilinearPolynomial sixteen = build_violation_polynomial(16);
  REQUIRE(sixteen.monomials().size() == want.size());
  for (const Monomial &term : sixteen.monomials()) {
    auto it = want.find(term.variables);
    REQUIRE(it != want.end());
    CHECK(term.coefficient == it->second);
  }
}

TEST_CASE("monte carlo deviation sampling") {
  const MultilinearPolynomial unit = single_term({1}, 1.0);
  const VariableSpace sure = VariableSpace::from_map({{1, 1.0}});
  const MonteCarloSummary fixed =
      monte_carlo_deviation(unit, sure, 100, 7, 0.5);
  CHECK(fixed.trials == 100);
  CHECK(fixed.seed == 7);
  CHECK(fixed.expectation == 1.0);
  CHECK(fixed.sample_mean == 1.0);
  CHECK(fixed.deviation_p50 == 0.0);
  CHECK(fixed.deviation_max == 0.0);
  CHECK(fixed.tail_count == 0);
  CHECK(fixed.tail_frequency == 0.0);
  CHECK(fixed.threshold == 0.5);

  const VariableSpace half = VariableSpace::from_map({{1, 0.5}});
  const MonteCarloSummary coin =
      monte_carlo_deviation(unit, half, 100000, 11, 0.4);
  CHECK(std::abs(coin.sample_mean - 0.5) < 0.01);
  // |Y - 1/2| is identically 1/2, so every quantile and every trial's
  // deviation clears the 0.4 threshold.
  CHECK(coin.deviation_p50 == 0.5);
  CHECK(coin.deviation_p90 == 0.5);
  CHECK(coin.deviation_p99 == 0.5);
  CHECK(coin.deviation_max == 0.5);
  CHECK(coin.tail_count == coin.trials);
  CHECK(coin.tail_frequency == 1.0);
  const MonteCarloSummary strict =
      monte_carlo_deviation(unit, half, 100000, 11, 0.6);
  CHECK(strict.tail_count == 0);
  CHECK(strict.sample_mean == coin.sample_mean);  // same seed, same draws

  const MonteCarloSummary other =
      monte_carlo_deviation(unit, half, 100000, 12, 0.4);
  CHECK(other.sample_mean != coin.sample_mean);

  // A bigger polynomial: quantiles are nondecreasing and the tail frequency
  // is consistent with the counted trials.
  const MultilinearPolynomial r4 = build_r4_polynomial(40);
  const VariableSpace priced = VariableSpace::from_profile({});
  const MonteCarloSummary wide =
      monte_carlo_deviation(r4, priced, 4000, 3, 1.0);
  CHECK(wide.deviation_p50 <= wide.deviation_p90);
  CHECK(wide.deviation_p90 <= wide.deviation_p99);
  CHECK(wide.deviation_p99 <= wide.deviation_max);
  CHECK(wide.tail_frequency ==
        static_cast<double>(wide.tail_count) / static_cast<double>(wide.trials));
  CHECK(rel_err(wide.expectation, expected_r4({}, 40, R4Method::kEnumerate)) <
        1e-12);

  CHECK_THROWS_AS(monte_carlo_deviation(unit, half, 0, 1, 0.5),
                  std::domain_error);
  CHECK_THROWS_AS(monte_carlo_deviation(unit, half, 10, 1, -1.0),
                  std::domain_error);
}

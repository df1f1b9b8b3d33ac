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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sidon4/sampler.hpp"

namespace sidon4 {

// Totally positive multilinear polynomials Y(t_1, t_2, ...) in boolean
// variables, and the machinery of the Kim-Vu polynomial concentration
// inequality: expectations, formal partial derivatives, the derivative
// maxima E_d(Y) = max_{|alpha|=d} E(d^alpha Y) and E_{>=d} = max_{d'>=d} E_d',
// the deviation threshold C_k lambda^{k-1/2} sqrt(E_{>=0} E_{>=1}), and the
// tail bound exp(-lambda/4 + (k-1) ln n).

// One product term. `variables` sorted strictly increasing (square-free:
// t_i^2 = t_i is applied on construction), coefficient > 0.
struct Monomial {
  std::vector<std::int64_t> variables;
  double coefficient = 0.0;
};

class MultilinearPolynomial {
 public:
  MultilinearPolynomial() = default;

  // Canonicalizes: sorts each index multiset, applies t^2 = t, merges equal
  // index sets by adding coefficients, orders monomials lexicographically.
  // Throws std::invalid_argument for coefficients <= 0 or indices < 1.
  static MultilinearPolynomial from_monomials(std::vector<Monomial> monomials);

  const std::vector<Monomial> &monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }
  int degree() const;                           // 0 for constants and zero
  std::vector<std::int64_t> variables() const;  // sorted distinct indices

  MultilinearPolynomial operator+(const MultilinearPolynomial &other) const;

 private:
  std::vector<Monomial> monomials_;
};

// Prices variable indices: either an explicit map or lazily from a
// ProbabilityProfile (index n priced at theta_n).
class VariableSpace {
 public:
  static VariableSpace from_map(std::map<std::int64_t, double> probabilities);
  static VariableSpace from_profile(const ProbabilityProfile &profile);

  // Throws std::out_of_range for an unpriced index (map mode) and
  // std::invalid_argument if a mapped value is outside [0, 1].
  double probability(std::int64_t variable) const;

 private:
  std::optional<ProbabilityProfile> profile_;
  std::map<std::int64_t, double> probabilities_;
};

// Formal derivative multi-index: variable -> derivative order >= 1.
using DerivativeIndex = std::map<std::int64_t, int>;

struct ConcentrationQuery {
  double lambda = 0.0;
  int k = 0;             // polynomial degree parameter of the inequality
  double c_k = 1.0;      // constant C_k
  std::int64_t n = 0;    // variable-universe size entering the tail bound
};

// Y restricted to strictly increasing quadruples summing to n:
// one monomial {x1,x2,x3,x4}, coefficient 1, per x1<x2<x3<x4 with sum n.
MultilinearPolynomial build_r4_polynomial(std::int64_t n);

// Violation-count polynomial: one solution tuple per
//   x1 < x2 < x3 < x4,  x1+x2+x3+x4 = n,  x4 + x5 = x6 + x7,
//   x5, x6, x7 in [1, x4),  (x6, x7) ordered,
// reduced by t^2 = t to the set of distinct values among the seven
// coordinates; coefficients accumulate over tuples with the same reduced
// index set. The support count grows like n^5, so enumeration refuses
// (EnumerationLimitError) for n > cap; the default keeps peak memory near
// a gigabyte.
MultilinearPolynomial build_violation_polynomial(std::int64_t n,
                                                std::int64_t cap = 100);

// E(Y) under independent t_i ~ Bernoulli(p_i).
double expectation(const MultilinearPolynomial &poly,
                   const VariableSpace &space);

// Formal partial derivative; any order >= 2 in alpha makes it zero.
MultilinearPolynomial derivative(const MultilinearPolynomial &poly,
                                const DerivativeIndex &alpha);

// E_d and E_{>=d}. Candidate multi-indices are the square-free alpha whose
// support lies inside at least one monomial; others differentiate Y to zero
// and cannot raise the max. `candidate_cap` bounds the distinct supports
// tracked per degree; past it the call refuses (EnumerationLimitError).
double max_derivative_expectation(const MultilinearPolynomial &poly,
                                  const VariableSpace &space, int d,
                                  std::int64_t candidate_cap = 1'000'000);
double max_derivative_expectation_from(const MultilinearPolynomial &poly,
                                       const VariableSpace &space, int d,
                                       std::int64_t candidate_cap = 1'000'000);

// C_k lambda^{k-1/2} sqrt(E_{>=0} E_{>=1}); query.k defaults to poly degree
// when 0. Throws std::domain_error for lambda <= 0.
double concentration_threshold(const MultilinearPolynomial &poly,
                               const VariableSpace &space,
                               const ConcentrationQuery &query,
                               std::int64_t candidate_cap = 1'000'000);

// exp(-lambda/4 + (k-1) ln n).
double tail_probability_bound(const ConcentrationQuery &query);

struct MonteCarloSummary {
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  double expectation = 0.0;    // exact E(Y) used as the center
  double sample_mean = 0.0;
  double deviation_p50 = 0.0;  // quantiles of |Y - E(Y)|
  double deviation_p90 = 0.0;
  double deviation_p99 = 0.0;
  double deviation_max = 0.0;
  double threshold = 0.0;
  std::int64_t tail_count = 0;     // trials with |Y - E(Y)| >= threshold
  double tail_frequency = 0.0;
};

// Deterministic given (seed): trial t prices variable v by the counter
// stream (derive_stream(seed, t), v). Trials are order-independent.
MonteCarloSummary monte_carlo_deviation(const MultilinearPolynomial &poly,
                                        const VariableSpace &space,
                                        std::int64_t trials,
                                        std::uint64_t seed, double threshold);

}  // namespace sidon4

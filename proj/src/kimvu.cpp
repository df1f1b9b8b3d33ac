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
#include <stdexcept>

#include "sidon4/errors.hpp"
#include "sidon4/rng.hpp"

namespace sidon4 {

namespace {

// Hash for sorted index vectors (FNV-1a over the words).
struct IndexSetHash {
  std::size_t operator()(const std::vector<std::int64_t> &v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t x : v) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using Accumulator =
    std::unordered_map<std::vector<std::int64_t>, double, IndexSetHash>;

bool monomial_less(const Monomial &a, const Monomial &b) {
  return a.variables < b.variables;
}

}  // namespace

MultilinearPolynomial MultilinearPolynomial::from_monomials(
    std::vector<Monomial> monomials) {
  for (Monomial &m : monomials) {
    if (!(m.coefficient > 0.0)) {
      throw std::invalid_argument(
          "monomial coefficients must be strictly positive");
    }
    std::sort(m.variables.begin(), m.variables.end());
    m.variables.erase(std::unique(m.variables.begin(), m.variables.end()),
                      m.variables.end());  // t^2 = t
    if (!m.variables.empty() && m.variables.front() < 1) {
      throw std::invalid_argument("variable indices must be >= 1");
    }
  }
  std::sort(monomials.begin(), monomials.end(), monomial_less);
  MultilinearPolynomial poly;
  for (Monomial &m : monomials) {
    if (!poly.monomials_.empty() &&
        poly.monomials_.back().variables == m.variables) {
      poly.monomials_.back().coefficient += m.coefficient;
    } else {
      poly.monomials_.push_back(std::move(m));
    }
  }
  return poly;
}

int MultilinearPolynomial::degree() const {
  std::size_t deg = 0;
  for (const Monomial &m : monomials_) deg = std::max(deg, m.variables.size());
  return static_cast<int>(deg);
}

std::vector<std::int64_t> MultilinearPolynomial::variables() const {
  std::vector<std::int64_t> vars;
  for (const Monomial &m : monomials_) {
    vars.insert(vars.end(), m.variables.begin(), m.variables.end());
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

MultilinearPolynomial MultilinearPolynomial::operator+(
    const MultilinearPolynomial &other) const {
  std::vector<Monomial> all = monomials_;
  all.insert(all.end(), other.monomials_.begin(), other.monomials_.end());
  return from_monomials(std::move(all));
}

VariableSpace VariableSpace::from_map(
    std::map<std::int64_t, double> probabilities) {
  for (const auto &[v, p] : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("probability for variable " +
                                  std::to_string(v) + " outside [0, 1]");
    }
  }
  VariableSpace space;
  space.probabilities_ = std::move(probabilities);
  return space;
}

VariableSpace VariableSpace::from_profile(const ProbabilityProfile &profile) {
  profile.validate();
  VariableSpace space;
  space.profile_ = profile;
  return space;
}

double VariableSpace::probability(std::int64_t variable) const {
  if (profile_) return membership_probability(*profile_, variable);
  auto it = probabilities_.find(variable);
  if (it == probabilities_.end()) {
    throw std::out_of_range("no probability assigned to variable " +
                            std::to_string(variable));
  }
  return it->second;
}

MultilinearPolynomial build_r4_polynomial(std::int64_t n) {
  std::vector<Monomial> monomials;
  for (std::int64_t x1 = 1; 4 * x1 + 6 <= n; ++x1) {
    for (std::int64_t x2 = x1 + 1; x1 + 3 * x2 + 3 <= n; ++x2) {
      for (std::int64_t x3 = x2 + 1; x1 + x2 + 2 * x3 + 1 <= n; ++x3) {
        std::int64_t x4 = n - x1 - x2 - x3;
        // loop bound guarantees x4 > x3
        monomials.push_back({{x1, x2, x3, x4}, 1.0});
      }
    }
  }
  return MultilinearPolynomial::from_monomials(std::move(monomials));
}

MultilinearPolynomial build_violation_polynomial(std::int64_t n,
                                                std::int64_t cap) {
  if (n > cap) {
    throw EnumerationLimitError(
        "violation polynomial enumeration for n = " + std::to_string(n) +
        " exceeds cap " + std::to_string(cap) +
        "; raise the cap explicitly to proceed");
  }
  Accumulator accum;
  std::vector<std::int64_t> key;
  for (std::int64_t x1 = 1; 4 * x1 + 6 <= n; ++x1) {
    for (std::int64_t x2 = x1 + 1; x1 + 3 * x2 + 3 <= n; ++x2) {
      for (std::int64_t x3 = x2 + 1; x1 + x2 + 2 * x3 + 1 <= n; ++x3) {
        std::int64_t x4 = n - x1 - x2 - x3;
        for (std::int64_t x5 = 1; x5 < x4; ++x5) {
          std::int64_t s = x4 + x5;
          // ordered (x6, x7), both in [1, x4): x6 in [s - x4 + 1, x4 - 1]
          for (std::int64_t x6 = std::max<std::int64_t>(1, s - x4 + 1);
               x6 < x4; ++x6) {
            std::int64_t x7 = s - x6;
            if (x7 < 1 || x7 >= x4) continue;
            key.assign({x1, x2, x3, x4, x5, x6, x7});
            std::sort(key.begin(), key.end());
            key.erase(std::unique(key.begin(), key.end()), key.end());
            accum[key] += 1.0;
          }
        }
      }
    }
  }
  std::vector<Monomial> monomials;
  monomials.reserve(accum.size());
  for (auto &[vars, coeff] : accum) monomials.push_back({vars, coeff});
  return MultilinearPolynomial::from_monomials(std::move(monomials));
}

double expectation(const MultilinearPolynomial &poly,
                   const VariableSpace &space) {
  // Kahan accumulation: polynomials run to ~1e6 small terms.
  double sum = 0.0, carry = 0.0;
  for (const Monomial &m : poly.monomials()) {
    double term = m.coefficient;
    for (std::int64_t v : m.variables) term *= space.probability(v);
    double y = term - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

MultilinearPolynomial derivative(const MultilinearPolynomial &poly,
                                 const DerivativeIndex &alpha) {
  for (const auto &[v, order] : alpha) {
    if (v < 1) throw std::invalid_argument("derivative variable must be >= 1");
    if (order < 1) {
      throw std::invalid_argument("derivative orders must be >= 1");
    }
    if (order >= 2) return MultilinearPolynomial{};  // t_i appears linearly
  }
  std::vector<Monomial> kept;
  for (const Monomial &m : poly.monomials()) {
    bool contains_all = true;
    for (const auto &[v, order] : alpha) {
      (void)order;
      if (!std::binary_search(m.variables.begin(), m.variables.end(), v)) {
        contains_all = false;
        break;
      }
    }
    if (!contains_all) continue;
    Monomial reduced;
    reduced.coefficient = m.coefficient;
    for (std::int64_t v : m.variables) {
      if (alpha.find(v) == alpha.end()) reduced.variables.push_back(v);
    }
    kept.push_back(std::move(reduced));
  }
  return MultilinearPolynomial::from_monomials(std::move(kept));
}

namespace {

// Shared core of E_d: for every size-d subset S of every monomial's index
// set, accumulate coefficient * product of the probabilities of the
// remaining indices; E_d is the max accumulated value. Subsets missing from
// every monomial contribute E(d^alpha Y) = 0 and never raise the max.
double max_over_candidates(const MultilinearPolynomial &poly,
                           const VariableSpace &space, int d,
                           std::int64_t candidate_cap) {
  if (d == 0) return expectation(poly, space);
  Accumulator accum;
  std::vector<int> pick(static_cast<std::size_t>(d));
  std::vector<std::int64_t> subset(static_cast<std::size_t>(d));
  for (const Monomial &m : poly.monomials()) {
    int k = static_cast<int>(m.variables.size());
    if (k < d) continue;
    // enumerate d-subsets of m.variables by index combination
    for (int i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      double rest = m.coefficient;
      int cursor = 0;
      for (int i = 0; i < k; ++i) {
        if (cursor < d && pick[static_cast<std::size_t>(cursor)] == i) {
          subset[static_cast<std::size_t>(cursor)] =
              m.variables[static_cast<std::size_t>(i)];
          ++cursor;
        } else {
          rest *= space.probability(m.variables[static_cast<std::size_t>(i)]);
        }
      }
      accum[subset] += rest;
      if (accum.size() > static_cast<std::size_t>(candidate_cap)) {
        throw EnumerationLimitError(
            "derivative candidate enumeration exceeds cap " +
            std::to_string(candidate_cap) + " at order " + std::to_string(d) +
            "; raise candidate_cap explicitly to proceed");
      }
      // next combination
      int i = d - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == i + k - d) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < d; ++j) {
        pick[static_cast<std::size_t>(j)] =
            pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  double best = 0.0;
  for (const auto &[vars, value] : accum) best = std::max(best, value);
  return best;
}

}  // namespace

double max_derivative_expectation(const MultilinearPolynomial &poly,
                                  const VariableSpace &space, int d,
                                  std::int64_t candidate_cap) {
  if (d < 0) throw std::domain_error("derivative order must be >= 0");
  if (d > poly.degree()) return 0.0;
  return max_over_candidates(poly, space, d, candidate_cap);
}

double max_derivative_expectation_from(const MultilinearPolynomial &poly,
                                       const VariableSpace &space, int d,
                                       std::int64_t candidate_cap) {
  if (d < 0) throw std::domain_error("derivative order must be >= 0");
  double best = 0.0;
  for (int dd = d; dd <= poly.degree(); ++dd) {
    best = std::max(best,
                    max_derivative_expectation(poly, space, dd, candidate_cap));
  }
  return best;
}

double concentration_threshold(const MultilinearPolynomial &poly,
                               const VariableSpace &space,
                               const ConcentrationQuery &query,
                               std::int64_t candidate_cap) {
  if (!(query.lambda > 0.0)) {
    throw std::domain_error("lambda must be positive");
  }
  int k = query.k > 0 ? query.k : poly.degree();
  double e0 = max_derivative_expectation_from(poly, space, 0, candidate_cap);
  double e1 = max_derivative_expectation_from(poly, space, 1, candidate_cap);
  return query.c_k * std::pow(query.lambda, k - 0.5) * std::sqrt(e0 * e1);
}

double tail_probability_bound(const ConcentrationQuery &query) {
  if (!(query.lambda > 0.0)) {
    throw std::domain_error("lambda must be positive");
  }
  if (query.k < 1 || query.n < 1) {
    throw std::domain_error("tail bound needs k >= 1 and n >= 1");
  }
  return std::exp(-query.lambda / 4.0 +
                  (query.k - 1) * std::log(static_cast<double>(query.n)));
}

MonteCarloSummary monte_carlo_deviation(const MultilinearPolynomial &poly,
                                        const VariableSpace &space,
                                        std::int64_t trials,
                                        std::uint64_t seed, double threshold) {
  if (trials < 1) throw std::domain_error("need at least one trial");
  if (threshold < 0.0) throw std::domain_error("threshold must be >= 0");

  MonteCarloSummary out;
  out.trials = trials;
  out.seed = seed;
  out.threshold = threshold;
  out.expectation = expectation(poly, space);

  // Flatten monomials and bucket them by smallest variable: a monomial can
  // only fire when its smallest variable is on, and realized sets are small,
  // so per trial we walk only the buckets of realized variables.
  std::vector<std::int64_t> vars = poly.variables();
  std::unordered_map<std::int64_t, std::uint32_t> var_slot;
  var_slot.reserve(vars.size() * 2);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    var_slot[vars[i]] = static_cast<std::uint32_t>(i);
  }
  struct FlatMonomial {
    std::vector<std::uint32_t> slots;  // slots of all variables but the min
    double coefficient;
  };
  std::unordered_map<std::int64_t, std::vector<FlatMonomial>> buckets;
  double constant_part = 0.0;
  for (const Monomial &m : poly.monomials()) {
    if (m.variables.empty()) {
      constant_part += m.coefficient;
      continue;
    }
    FlatMonomial flat;
    flat.coefficient = m.coefficient;
    for (std::size_t i = 1; i < m.variables.size(); ++i) {
      flat.slots.push_back(var_slot[m.variables[i]]);
    }
    buckets[m.variables.front()].push_back(std::move(flat));
  }

  std::vector<double> probs(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    probs[i] = space.probability(vars[i]);
  }

  std::vector<char> on(vars.size());
  std::vector<double> values(static_cast<std::size_t>(trials));
  for (std::int64_t t = 0; t < trials; ++t) {
    std::uint64_t trial_seed =
        derive_stream(seed, static_cast<std::uint64_t>(t));
    std::vector<std::int64_t> realized;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      bool hit = stream_uniform(trial_seed,
                                static_cast<std::uint64_t>(vars[i])) < probs[i];
      on[i] = hit ? 1 : 0;
      if (hit) realized.push_back(vars[i]);
    }
    double y = constant_part;
    for (std::int64_t v : realized) {
      auto bucket = buckets.find(v);
      if (bucket == buckets.end()) continue;
      for (const FlatMonomial &m : bucket->second) {
        bool all_on = true;
        for (std::uint32_t slot : m.slots) {
          if (!on[slot]) {
            all_on = false;
            break;
          }
        }
        if (all_on) y += m.coefficient;
      }
    }
    values[static_cast<std::size_t>(t)] = y;
  }

  double mean = 0.0;
  for (double y : values) mean += y;
  out.sample_mean = mean / static_cast<double>(trials);

  std::vector<double> deviations(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    deviations[i] = std::abs(values[i] - out.expectation);
    if (deviations[i] >= threshold) ++out.tail_count;
  }
  out.tail_frequency =
      static_cast<double>(out.tail_count) / static_cast<double>(trials);
  std::sort(deviations.begin(), deviations.end());
  auto quantile = [&](double q) {
    // nearest-rank on the sorted deviations
    auto rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(deviations.size())));
    if (rank == 0) rank = 1;
    return deviations[rank - 1];
  };
  out.deviation_p50 = quantile(0.50);
  out.deviation_p90 = quantile(0.90);
  out.deviation_p99 = quantile(0.99);
  out.deviation_max = deviations.back();
  return out;
}

}  // namespace sidon4

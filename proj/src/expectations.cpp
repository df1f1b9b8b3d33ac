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

#include "sidon4/expectations.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sidon4/errors.hpp"

namespace sidon4 {
namespace {

class Kahan {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// theta[i] = membership probability at i, theta[0] = 0.
std::vector<double> theta_row(const ProbabilityProfile &profile,
                              std::int64_t len) {
  std::vector<double> theta(static_cast<std::size_t>(len) + 1, 0.0);
  for (std::int64_t i = 1; i <= len; ++i)
    theta[static_cast<std::size_t>(i)] = membership_probability(profile, i);
  return theta;
}

// g2[s] = sum over ordered pairs x+y=s (x,y >= 1) of theta[x]*theta[y],
// t3[m] = sum over ordered triples. Direct evaluation below the FFT
// threshold keeps every value exact to a few ulp; above it a single real
// transform yields both as spectrum powers.
struct ConvolutionTables {
  std::vector<double> theta;
  std::vector<double> g2;
  std::vector<double> t3;
};

constexpr std::int64_t kDirectConvolutionLimit = 8192;

// Smallest 5-smooth integer >= x (keeps the FFT sizes fast).
std::int64_t next_fft_length(std::int64_t x) {
  std::int64_t best = 1;
  while (best < x) best *= 2;
  for (std::int64_t p3 = 1; p3 < 2 * best; p3 *= 3) {
    for (std::int64_t p35 = p3; p35 < 2 * best; p35 *= 5) {
      std::int64_t cand = p35;
      while (cand < x) cand *= 2;
      best = std::min(best, cand);
    }
  }
  return best;
}

void fft_spectrum_powers(const std::vector<double> &theta, std::int64_t m,
                         std::vector<double> *square,
                         std::vector<double> *cube) {
  const std::size_t mu = static_cast<std::size_t>(m);
  const std::size_t half = mu / 2 + 1;
  double *real = fftw_alloc_real(mu);
  fftw_complex *spec = fftw_alloc_complex(half);
  fftw_complex *work = fftw_alloc_complex(half);
  fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(m), real, spec,
                                       FFTW_ESTIMATE);
  fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(m), work, real,
                                       FFTW_ESTIMATE);
  std::fill(real, real + mu, 0.0);
  std::copy(theta.begin(), theta.end(), real);
  fftw_execute(fwd);

  const double scale = 1.0 / static_cast<double>(m);
  auto extract = [&](std::vector<double> *out) {
    fftw_execute(inv);
    out->assign(real, real + mu);
    for (double &v : *out) v *= scale;
  };
  for (std::size_t k = 0; k < half; ++k) {
    const double a = spec[k][0];
    const double b = spec[k][1];
    work[k][0] = a * a - b * b;
    work[k][1] = 2.0 * a * b;
  }
  extract(square);
  if (cube != nullptr) {
    for (std::size_t k = 0; k < half; ++k) {
      const double a = spec[k][0];
      const double b = spec[k][1];
      const double sq_re = a * a - b * b;
      const double sq_im = 2.0 * a * b;
      work[k][0] = sq_re * a - sq_im * b;
      work[k][1] = sq_re * b + sq_im * a;
    }
    extract(cube);
  }
  fftw_destroy_plan(inv);
  fftw_destroy_plan(fwd);
  fftw_free(work);
  fftw_free(spec);
  fftw_free(real);
}

ConvolutionTables build_tables(const ProbabilityProfile &profile,
                               std::int64_t theta_len, std::int64_t g2_len,
                               std::int64_t t3_len) {
  ConvolutionTables tables;
  tables.theta = theta_row(profile, theta_len);
  const std::int64_t g2_work = std::max(g2_len, t3_len > 0 ? t3_len - 1 : 0);

  if (theta_len <= kDirectConvolutionLimit) {
    std::vector<long double> bins(static_cast<std::size_t>(g2_work) + 1, 0.0L);
    for (std::int64_t x = 1; x <= theta_len && 2 * x <= g2_work; ++x) {
      const long double tx = tables.theta[static_cast<std::size_t>(x)];
      bins[static_cast<std::size_t>(2 * x)] += tx * tx;
      for (std::int64_t y = x + 1; y <= theta_len && x + y <= g2_work; ++y)
        bins[static_cast<std::size_t>(x + y)] +=
            2.0L * tx * tables.theta[static_cast<std::size_t>(y)];
    }
    tables.g2.assign(bins.begin(), bins.end());
    if (t3_len > 0) {
      tables.t3.assign(static_cast<std::size_t>(t3_len) + 1, 0.0);
      for (std::int64_t m = 3; m <= t3_len; ++m) {
        Kahan acc;
        for (std::int64_t x = 1; x <= std::min(theta_len, m - 2); ++x)
          acc.add(tables.theta[static_cast<std::size_t>(x)] *
                  tables.g2[static_cast<std::size_t>(m - x)]);
        tables.t3[static_cast<std::size_t>(m)] = acc.value();
      }
    }
  } else {
    const std::int64_t span = (t3_len > 0 ? 3 : 2) * (theta_len + 1) + 1;
    const std::int64_t m = next_fft_length(span);
    std::vector<double> square;
    std::vector<double> cube;
    fft_spectrum_powers(tables.theta, m, &square, t3_len > 0 ? &cube : nullptr);
    tables.g2.assign(square.begin(),
                     square.begin() + static_cast<std::size_t>(g2_work) + 1);
    for (std::size_t s = 0; s < tables.g2.size() && s < 2; ++s)
      tables.g2[s] = 0.0;
    if (t3_len > 0) {
      tables.t3.assign(cube.begin(),
                       cube.begin() + static_cast<std::size_t>(t3_len) + 1);
      for (std::size_t s = 0; s < tables.t3.size() && s < 3; ++s)
        tables.t3[s] = 0.0;
    }
  }
  if (static_cast<std::int64_t>(tables.g2.size()) > g2_len + 1)
    tables.g2.resize(static_cast<std::size_t>(g2_len) + 1);
  return tables;
}

}  // namespace

double power_sum(std::int64_t limit, double alpha, double beta) {
  if (limit < 3) throw std::domain_error("power_sum: limit must be >= 3");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw std::domain_error("power_sum: exponents must exceed -1");
  Kahan acc;
  for (std::int64_t i = 1; i < limit; ++i)
    acc.add(std::pow(static_cast<double>(i), alpha) *
            std::pow(static_cast<double>(limit - i), beta));
  return acc.value();
}

std::vector<PowerSumRatio> power_sum_ratio_profile(
    std::span<const double> alphas, std::span<const double> betas,
    std::span<const std::int64_t> limits) {
  std::vector<PowerSumRatio> rows;
  rows.reserve(alphas.size() * betas.size() * limits.size());
  for (double alpha : alphas) {
    for (double beta : betas) {
      for (std::int64_t limit : limits) {
        PowerSumRatio row;
        row.alpha = alpha;
        row.beta = beta;
        row.limit = limit;
        row.sum = power_sum(limit, alpha, beta);
        row.ratio = row.sum /
                    std::pow(static_cast<double>(limit), alpha + beta + 1.0);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

namespace {

// Lazily grown theta values, indexed by the variable value.
class ThetaCache {
 public:
  explicit ThetaCache(const ProbabilityProfile &profile) : profile_(profile) {
    values_.push_back(0.0);
  }
  double at(std::int64_t y) {
    while (static_cast<std::int64_t>(values_.size()) <= y)
      values_.push_back(membership_probability(
          profile_, static_cast<std::int64_t>(values_.size())));
    return values_[static_cast<std::size_t>(y)];
  }

 private:
  ProbabilityProfile profile_;
  std::vector<double> values_;
};

struct BudgetExceeded {};

// Shared leaf check: order constraints, optional all-distinct, then the
// theta product over every variable.
class ConstraintEvaluator {
 public:
  ConstraintEvaluator(const LinearConstraintSystem &system, ThetaCache *cache,
                      std::int64_t budget)
      : system_(system), cache_(cache), budget_(budget) {}

  void charge(std::int64_t ops = 1) {
    ops_ += ops;
    if (ops_ > budget_) throw BudgetExceeded{};
  }
  std::int64_t ops() const { return ops_; }

  void leaf(const std::vector<std::int64_t> &y, Kahan *acc) {
    charge();
    for (const auto &[lo, hi] : system_.strict_less)
      if (!(y[static_cast<std::size_t>(lo)] < y[static_cast<std::size_t>(hi)]))
        return;
    if (system_.distinct) {
      const std::size_t v = y.size();
      for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = i + 1; j < v; ++j)
          if (y[i] == y[j]) return;
    }
    double w = 1.0;
    for (std::int64_t value : y) w *= cache_->at(value);
    acc->add(w);
  }

  // Exact enumeration over the slots listed in `free_slots` (ascending),
  // coefficients all positive there, fixed remaining target.
  void enumerate_positive(const std::vector<std::int64_t> &coeff,
                          const std::vector<int> &free_slots, std::size_t pos,
                          std::int64_t remaining, std::vector<std::int64_t> *y,
                          Kahan *acc) {
    charge();
    if (pos == free_slots.size()) {
      if (remaining == 0) leaf(*y, acc);
      return;
    }
    const int slot = free_slots[pos];
    const std::int64_t c = coeff[static_cast<std::size_t>(slot)];
    // Last slot: solve c * value = remaining instead of scanning, so a
    // two-variable shell costs O(shell), not O(shell^2).
    if (pos + 1 == free_slots.size()) {
      if (remaining >= c && remaining % c == 0) {
        (*y)[static_cast<std::size_t>(slot)] = remaining / c;
        leaf(*y, acc);
        (*y)[static_cast<std::size_t>(slot)] = 0;
      }
      return;
    }
    std::int64_t tail_min = 0;
    for (std::size_t k = pos + 1; k < free_slots.size(); ++k)
      tail_min += coeff[static_cast<std::size_t>(free_slots[k])];
    for (std::int64_t value = 1; c * value + tail_min <= remaining; ++value) {
      (*y)[static_cast<std::size_t>(slot)] = value;
      enumerate_positive(coeff, free_slots, pos + 1, remaining - c * value, y,
                         acc);
    }
    (*y)[static_cast<std::size_t>(slot)] = 0;
  }

 private:
  const LinearConstraintSystem &system_;
  ThetaCache *cache_;
  std::int64_t budget_;
  std::int64_t ops_ = 0;
};

// Closed-form bound on the sum over all shells t > S, derived by comparing
// each factor against power envelopes of t. Valid once t >= s_min.
struct TailModel {
  double amplitude = 0.0;
  double sigma = 0.0;  // certified < -1
  std::int64_t s_min = 1;

  double bound(std::int64_t last_shell) const {
    const double t = static_cast<double>(last_shell + 1);
    if (last_shell + 1 < s_min) return std::numeric_limits<double>::infinity();
    return amplitude *
           (std::pow(t, sigma) + std::pow(t, sigma + 1.0) / (-sigma - 1.0));
  }
};

}  // namespace

double constrained_expectation(const LinearConstraintSystem &system,
                               std::int64_t term_budget) {
  const std::size_t v = system.coefficients.size();
  if (v < 1 || v > 4)
    throw std::invalid_argument(
        "constrained_expectation: between 1 and 4 variables required");
  for (std::int64_t c : system.coefficients)
    if (c == 0)
      throw std::invalid_argument(
          "constrained_expectation: zero coefficient");
  for (const auto &[lo, hi] : system.strict_less)
    if (lo < 0 || hi < 0 || lo >= static_cast<int>(v) ||
        hi >= static_cast<int>(v) || lo == hi)
      throw std::invalid_argument(
          "constrained_expectation: malformed order constraint");
  if (!(system.epsilon > 0.0))
    throw std::invalid_argument("constrained_expectation: epsilon must be > 0");
  if (term_budget < 1)
    throw std::invalid_argument("constrained_expectation: empty term budget");
  system.profile.validate();

  // Flipping the equation sign preserves the solution set; afterwards at
  // least one coefficient is positive.
  LinearConstraintSystem norm = system;
  if (std::all_of(norm.coefficients.begin(), norm.coefficients.end(),
                  [](std::int64_t c) { return c < 0; })) {
    for (std::int64_t &c : norm.coefficients) c = -c;
    norm.target = -norm.target;
  }
  std::vector<int> pos;
  std::vector<int> neg;
  for (std::size_t i = 0; i < v; ++i)
    (norm.coefficients[i] > 0 ? pos : neg).push_back(static_cast<int>(i));

  ThetaCache cache(norm.profile);
  ConstraintEvaluator eval(norm, &cache, term_budget);
  Kahan total;
  std::vector<std::int64_t> y(v, 0);

  if (neg.empty()) {
    try {
      eval.enumerate_positive(norm.coefficients, pos, 0, norm.target, &y,
                              &total);
    } catch (const BudgetExceeded &) {
      std::ostringstream msg;
      msg << "constrained_expectation: finite family exceeded the term budget "
          << term_budget;
      throw EnumerationLimitError(msg.str());
    }
    return total.value();
  }

  // Mixed signs: enumerate by the total s of the negative-side variables and
  // stop when the tail certificate dips under epsilon. The certificate needs
  // every factor to decay; the exponent check below is exactly that.
  const double e = norm.profile.exponent();
  const int p = static_cast<int>(pos.size());
  const int q = static_cast<int>(neg.size());
  if (e <= 0.0)
    throw DivergenceError(
        "constrained_expectation: non-positive decay exponent, the mixed-sign "
        "family has no summable tail");
  double z = 0.0;
  double kz = 1.0;
  if (e < 1.0) {
    z = 1.0 - e;
    kz = 1.0 + 1.0 / (1.0 - e);
  } else if (e == 1.0) {
    z = 0.05;
    kz = 21.0;
  } else {
    z = 0.0;
    kz = 1.0 + 1.0 / (e - 1.0);
  }
  const double sigma = static_cast<double>(v - 2) * z - 2.0 * e;
  if (sigma >= -1.0 - 1e-9) {
    std::ostringstream msg;
    msg << "constrained_expectation: tail comparison exponent " << sigma
        << " with " << v << " mixed-sign variables at decay exponent " << e
        << " certifies divergence (needs < -1)";
    throw DivergenceError(msg.str());
  }

  std::int64_t c_min_neg = std::numeric_limits<std::int64_t>::max();
  for (int slot : neg)
    c_min_neg = std::min(c_min_neg,
                         -norm.coefficients[static_cast<std::size_t>(slot)]);
  double pos_product = 1.0;
  for (int slot : pos)
    pos_product *=
        static_cast<double>(norm.coefficients[static_cast<std::size_t>(slot)]);

  TailModel tail;
  const double m = static_cast<double>(norm.target);
  double c_eff = static_cast<double>(c_min_neg);
  std::int64_t s_floor = 1;
  if (m < 0.0) {
    c_eff = static_cast<double>(c_min_neg) / 2.0;
    s_floor = static_cast<std::int64_t>(
                  std::ceil(-2.0 * m / static_cast<double>(c_min_neg))) +
              1;
  }
  tail.amplitude = std::pow(static_cast<double>(q), 1.0 + e) *
                   std::pow(static_cast<double>(p), 1.0 + e) *
                   std::pow(kz, static_cast<double>(v - 2)) *
                   std::pow(pos_product, e) *
                   std::pow(c_eff, z * static_cast<double>(p - 1) - e);
  tail.sigma = sigma;
  tail.s_min = std::max<std::int64_t>(
      {static_cast<std::int64_t>(q), s_floor,
       static_cast<std::int64_t>(std::ceil(static_cast<double>(p) / c_eff))});

  const int n0 = neg[0];
  const int n1 = q > 1 ? neg[1] : 0;
  const int n2 = q > 2 ? neg[2] : 0;
  auto shell_target = [&](void) {
    std::int64_t r = norm.target;
    for (int slot : neg)
      r -= norm.coefficients[static_cast<std::size_t>(slot)] *
           y[static_cast<std::size_t>(slot)];
    return r;
  };

  std::int64_t shell = static_cast<std::int64_t>(q) - 1;
  try {
    for (;;) {
      ++shell;
      auto run_positive = [&]() {
        const std::int64_t r = shell_target();
        if (r >= static_cast<std::int64_t>(p))
          eval.enumerate_positive(norm.coefficients, pos, 0, r, &y, &total);
        else
          eval.charge();
      };
      if (q == 1) {
        y[static_cast<std::size_t>(n0)] = shell;
        run_positive();
      } else if (q == 2) {
        for (std::int64_t a = 1; a < shell; ++a) {
          y[static_cast<std::size_t>(n0)] = a;
          y[static_cast<std::size_t>(n1)] = shell - a;
          run_positive();
        }
      } else {
        for (std::int64_t a = 1; a <= shell - 2; ++a) {
          y[static_cast<std::size_t>(n0)] = a;
          for (std::int64_t b = 1; a + b < shell; ++b) {
            y[static_cast<std::size_t>(n1)] = b;
            y[static_cast<std::size_t>(n2)] = shell - a - b;
            run_positive();
          }
        }
      }
      if (tail.bound(shell) < norm.epsilon) return total.value();
    }
  } catch (const BudgetExceeded &) {
    std::ostringstream msg;
    msg << "constrained_expectation: epsilon " << norm.epsilon
        << " unreachable within " << term_budget
        << " terms; residual tail bound " << tail.bound(shell)
        << " after negative-side total " << shell;
    throw EnumerationLimitError(msg.str());
  }
}

double expected_r4(const ProbabilityProfile &profile, std::int64_t n,
                   R4Method method, std::int64_t enumerate_cap) {
  profile.validate();
  if (n < 1) throw std::domain_error("expected_r4: n must be >= 1");
  if (method == R4Method::kEnumerate) {
    if (n > enumerate_cap) {
      std::ostringstream msg;
      msg << "expected_r4: direct enumeration refused for n = " << n
          << " (cap " << enumerate_cap << "); use the convolution method";
      throw EnumerationLimitError(msg.str());
    }
    const std::vector<double> theta = theta_row(profile, n);
    Kahan acc;
    for (std::int64_t x1 = 1; 4 * x1 + 6 <= n; ++x1)
      for (std::int64_t x2 = x1 + 1; x1 + 3 * x2 + 3 <= n; ++x2)
        for (std::int64_t x3 = x2 + 1; x1 + x2 + 2 * x3 + 1 <= n; ++x3) {
          const std::int64_t x4 = n - x1 - x2 - x3;
          acc.add(theta[static_cast<std::size_t>(x1)] *
                  theta[static_cast<std::size_t>(x2)] *
                  theta[static_cast<std::size_t>(x3)] *
                  theta[static_cast<std::size_t>(x4)]);
        }
    return acc.value();
  }

  if (n < 10) return 0.0;
  const ConvolutionTables tables =
      build_tables(profile, n, std::max<std::int64_t>(n - 2, 0), 0);
  const auto &theta = tables.theta;
  const auto &g2 = tables.g2;
  auto th = [&](std::int64_t i) { return theta[static_cast<std::size_t>(i)]; };
  auto pair_at = [&](std::int64_t s) {
    return g2[static_cast<std::size_t>(s)];
  };

  Kahan ordered;
  for (std::int64_t s = 2; s <= n - 2; ++s)
    ordered.add(pair_at(s) * pair_at(n - s));
  Kahan two_equal;  // one coordinate pair merged, other two free
  for (std::int64_t u = 1; 2 * u <= n - 2; ++u)
    two_equal.add(th(u) * th(u) * pair_at(n - 2 * u));
  double two_pairs = 0.0;  // both coordinate pairs merged
  if (n % 2 == 0) {
    Kahan acc;
    for (std::int64_t u = 1; u <= n / 2 - 1; ++u) {
      const double a = th(u);
      const double b = th(n / 2 - u);
      acc.add(a * a * b * b);
    }
    two_pairs = acc.value();
  }
  Kahan three_equal;
  for (std::int64_t u = 1; 3 * u <= n - 1; ++u)
    three_equal.add(th(u) * th(u) * th(u) * th(n - 3 * u));
  double all_equal = 0.0;
  if (n % 4 == 0) {
    const double t = th(n / 4);
    all_equal = t * t * t * t;
  }

  // Inclusion-exclusion over the coordinate partitions of an ordered
  // 4-tuple; the surviving all-distinct total counts each increasing
  // quadruple 4! times.
  const double distinct = ordered.value() - 6.0 * two_equal.value() +
                          3.0 * two_pairs + 8.0 * three_equal.value() -
                          6.0 * all_equal;
  return distinct / 24.0;
}

double interaction_sum(int case_id, std::int64_t n,
                       const ProbabilityProfile &profile) {
  profile.validate();
  if (case_id < 1 || case_id > 6)
    throw std::invalid_argument("interaction_sum: case_id must be in 1..6");
  if (n < 1) throw std::domain_error("interaction_sum: n must be >= 1");

  const bool needs_triples = case_id == 1;
  const ConvolutionTables tables =
      build_tables(profile, 2 * n, 2 * n, needs_triples ? n : 0);
  const auto &theta = tables.theta;
  const auto &g2 = tables.g2;
  auto th = [&](std::int64_t i) {
    return i >= 1 ? theta[static_cast<std::size_t>(i)] : 0.0;
  };
  auto pair_at = [&](std::int64_t s) {
    return s >= 2 ? g2[static_cast<std::size_t>(s)] : 0.0;
  };

  Kahan acc;
  switch (case_id) {
    case 1: {
      // sum over x4 of theta(x4) * T3(n - x4) * sum_{x5 < x4} theta(x5) *
      // G2(x4 + x5); the pair (x6, x7) contributes G2 of the shared sum.
      for (std::int64_t x4 = 2; x4 <= n - 3; ++x4) {
        Kahan inner;
        for (std::int64_t x5 = 1; x5 < x4; ++x5)
          inner.add(th(x5) * pair_at(x4 + x5));
        acc.add(th(x4) * tables.t3[static_cast<std::size_t>(n - x4)] *
                inner.value());
      }
      break;
    }
    case 2: {
      for (std::int64_t s = 2; s <= n - 2; ++s)
        acc.add(pair_at(s) * pair_at(s) * pair_at(n - s));
      break;
    }
    case 3: {
      // Group by d = x4 - x3; the inner correlation P(d, x4 - 1) =
      // sum_{x5 <= x4-1} theta(x5) theta(x5 + d) grows by one term per x4.
      for (std::int64_t d = -(n - 4); d <= n - 4; ++d) {
        const std::int64_t x4_lo = std::max<std::int64_t>(2, d + 1);
        const std::int64_t x4_hi = (n - 2 + d) / 2;
        if (x4_lo > x4_hi) continue;
        double corr = 0.0;
        std::int64_t covered = 0;  // P covers x5 <= covered
        for (std::int64_t x5 = 1; x5 < x4_lo; ++x5)
          corr += th(x5) * th(x5 + d);
        covered = x4_lo - 1;
        for (std::int64_t x4 = x4_lo; x4 <= x4_hi; ++x4) {
          while (covered < x4 - 1) {
            ++covered;
            corr += th(covered) * th(covered + d);
          }
          const std::int64_t x3 = x4 - d;
          acc.add(th(x3) * th(x4) * pair_at(n - x3 - x4) * corr);
        }
      }
      break;
    }
    case 4:
    case 5: {
      // Both displays reduce to sum over s of G2(s) * H(s); case 5 is case 4
      // after swapping the roles of x2 and x4.
      for (std::int64_t s = 2; s <= n - 2; ++s) {
        Kahan inner;
        const std::int64_t hi = std::min(s - 1, n - s - 1);
        for (std::int64_t x = 1; x <= hi; ++x)
          inner.add(th(x) * th(s - x) * th(n - s - x));
        acc.add(pair_at(s) * inner.value());
      }
      break;
    }
    case 6: {
      if (n % 2 == 0) {
        const double half = pair_at(n / 2);
        acc.add(half * half);
      }
      break;
    }
    default:
      break;
  }
  return acc.value();
}

}  // namespace sidon4

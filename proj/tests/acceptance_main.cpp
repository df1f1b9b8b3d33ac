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

// Release gate: one line of output per criterion, PASS or FAIL with the
// measured numbers, exit code = number of failures. Tolerances and budgets
// are pinned here on purpose; a criterion that cannot be met is reported as
// a FAIL with its measurements, never silently relaxed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sidon4/expectations.hpp"
#include "sidon4/harness.hpp"
#include "sidon4/io.hpp"
#include "sidon4/kimvu.hpp"
#include "sidon4/repcount.hpp"
#include "sidon4/rng.hpp"
#include "sidon4/sampler.hpp"
#include "sidon4/sidon.hpp"

using namespace sidon4;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double rel_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

int failures = 0;

void report(int id, bool pass, const std::string &detail) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream out;
  out << std::setprecision(digits) << v;
  return out.str();
}

// Deterministic instance pool shared by criteria 1 and 2: sets of at most
// 25 values drawn from [1, 200].
std::vector<std::vector<std::int64_t>> counting_instances() {
  std::vector<std::vector<std::int64_t>> sets;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::uint64_t seed = 0xACCE5501u + i;
    const std::size_t size = 1 + stream_value(seed, 0) % 25;
    std::set<std::int64_t> draw;
    std::uint64_t idx = 1;
    while (draw.size() < size) {
      draw.insert(1 + static_cast<std::int64_t>(stream_value(seed, idx++) % 200));
    }
    sets.emplace_back(draw.begin(), draw.end());
  }
  return sets;
}

const std::vector<std::vector<std::int64_t>> &adversarial_corpus() {
  static const std::vector<std::vector<std::int64_t>> corpus = [] {
    std::vector<std::vector<std::int64_t>> sets;
    sets.push_back({});
    sets.push_back({7});
    sets.push_back({1, 2, 3, 4});
    std::vector<std::int64_t> run;
    for (std::int64_t v = 1; v <= 60; ++v) run.push_back(v);
    sets.push_back(run);
    std::vector<std::int64_t> ap1, ap2;
    for (std::int64_t k = 0; k < 60; ++k) ap1.push_back(7 + 4 * k);
    for (std::int64_t k = 0; k < 50; ++k) ap2.push_back(5 + 3 * k);
    sets.push_back(ap1);
    sets.push_back(ap2);
    // A Sidon set spoiled by one extra element (1 + 22 = 11 + 12).
    sets.push_back({1, 2, 5, 11, 12, 22, 40, 57, 81, 105});
    std::vector<std::int64_t> squares, powers, triangles;
    for (std::int64_t k = 1; k * k <= 3600; ++k) squares.push_back(k * k);
    for (std::int64_t p = 1; p <= (1 << 20); p *= 2) powers.push_back(p);
    for (std::int64_t k = 1; k * (k + 1) / 2 <= 2000; ++k)
      triangles.push_back(k * (k + 1) / 2);
    sets.push_back(squares);
    sets.push_back(powers);
    sets.push_back(triangles);
    sets.push_back({1,  2,  4,  8,  13, 21, 31, 45, 66, 81,
                    97, 123, 148, 182, 204, 252, 290, 361, 401, 475});
    return sets;
  }();
  return corpus;
}

}  // namespace

int main() {
  // --- 1: counting tables versus the literal tuple-walk oracle -------------
  const std::vector<std::vector<std::int64_t>> sets = counting_instances();
  {
    const auto start = Clock::now();
    std::int64_t cases = 0, mismatches = 0;
    for (const auto &set : sets) {
      for (int h = 2; h <= 4; ++h) {
        const RepCountTable table = rep_table(set, h, 200);
        for (std::int64_t n = 1; n <= 200; ++n) {
          ++cases;
          if (table.total(n) != count_total_naive(set, n, h)) ++mismatches;
        }
      }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream d;
    d << mismatches << " mismatches in " << cases
      << " (set, n, h) cases, 100 sets, n <= 200, h in {2,3,4}, "
      << fmt(elapsed, 3) << " s (budget 10 s)";
    report(1, mismatches == 0 && elapsed < 10.0, d.str());
  }

  // --- 2: total = strict + repeated on the same instances ------------------
  {
    std::int64_t cases = 0, violations = 0;
    for (const auto &set : sets) {
      for (int h = 2; h <= 4; ++h) {
        const RepCountTable table = rep_table(set, h, 200);
        for (std::int64_t n = 1; n <= 200; ++n) {
          ++cases;
          const RepDecomposition parts = decompose(set, n, h);
          if (parts.total != parts.strict + parts.repeated ||
              parts.total != table.total(n) ||
              parts.strict != table.strict(n) ||
              parts.repeated != table.repeated(n))
            ++violations;
        }
      }
    }
    std::ostringstream d;
    d << violations << " identity violations in " << cases << " cases";
    report(2, violations == 0, d.str());
  }

  // --- 3: pruning always yields a Sidon set --------------------------------
  {
    const auto start = Clock::now();
    const std::vector<ProbabilityProfile> profiles{{5, 7}, {1, 2}, {2, 3}};
    const std::vector<std::int64_t> bounds{1000, 5000, 20000, 50000, 100000};
    std::int64_t checked = 0, not_sidon = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const SampledSet sample =
          sample_set(profiles[i % profiles.size()], bounds[i % bounds.size()],
                     9000 + i);
      ++checked;
      if (!is_sidon(prune(sample.elements))) ++not_sidon;
    }
    for (const auto &set : adversarial_corpus()) {
      ++checked;
      if (!is_sidon(prune(set))) ++not_sidon;
    }
    const double elapsed = seconds_since(start);
    std::ostringstream d;
    d << not_sidon << " non-Sidon prunes in " << checked
      << " sets (1000 sampled at bounds up to 1e5 plus adversarial corpus), "
      << fmt(elapsed, 3) << " s (budget 60 s)";
    report(3, not_sidon == 0 && elapsed < 60.0, d.str());
  }

  // --- 4: polynomial expectations versus full boolean enumeration ----------
  {
    constexpr double kTol = 1e-12;
    double worst = 0.0;
    std::int64_t bad_beyond_degree = 0;
    for (std::uint64_t p = 0; p < 200; ++p) {
      const std::uint64_t seed = 0x4b561000u + p;
      std::uint64_t idx = 0;
      auto next = [&] { return stream_value(seed, idx++); };
      auto unif = [&] { return stream_uniform(seed, idx++); };
      const int v = 3 + static_cast<int>(next() % 14);  // 3..16 variables
      std::vector<Monomial> raw;
      const int terms = 1 + static_cast<int>(next() % 8);
      for (int t = 0; t < terms; ++t) {
        Monomial m;
        const int len = 1 + static_cast<int>(next() % 5);  // degree <= 5
        for (int j = 0; j < len; ++j)
          m.variables.push_back(1 + static_cast<std::int64_t>(next() % v));
        m.coefficient = 0.25 + 3.75 * unif();
        raw.push_back(std::move(m));
      }
      std::map<std::int64_t, double> prices;
      for (std::int64_t var = 1; var <= v; ++var) prices[var] = unif();

      const MultilinearPolynomial poly =
          MultilinearPolynomial::from_monomials(raw);
      const VariableSpace space = VariableSpace::from_map(prices);

      // Weight of every assignment, then E(Y) and three E(d^alpha Y) against
      // the raw term list.
      const std::uint64_t masks = 1ull << v;
      std::vector<long double> weight(masks);
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        long double w = 1.0L;
        for (int b = 0; b < v; ++b) {
          const double pb = prices.at(b + 1);
          w *= ((mask >> b) & 1u) ? pb : (1.0 - pb);
        }
        weight[mask] = w;
      }
      auto enumerate = [&](const std::vector<Monomial> &terms_list) {
        long double total = 0.0L;
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
          double value = 0.0;
          for (const Monomial &m : terms_list) {
            bool on = true;
            for (std::int64_t var : m.variables) {
              if (((mask >> (var - 1)) & 1u) == 0u) {
                on = false;
                break;
              }
            }
            if (on) value += m.coefficient;
          }
          total += weight[mask] * value;
        }
        return static_cast<double>(total);
      };

      const double want = enumerate(raw);
      const double got = expectation(poly, space);
      worst = std::max(worst,
                       std::abs(got - want) / std::max(1.0, std::abs(want)));

      for (int a = 0; a < 3; ++a) {
        std::set<std::int64_t> subset;
        const int len = static_cast<int>(next() % 4);
        while (static_cast<int>(subset.size()) < len)
          subset.insert(1 + static_cast<std::int64_t>(next() % v));
        DerivativeIndex alpha;
        std::vector<Monomial> stripped;
        for (std::int64_t var : subset) alpha[var] = 1;
        for (const Monomial &m : raw) {
          const std::set<std::int64_t> support(m.variables.begin(),
                                               m.variables.end());
          if (!std::includes(support.begin(), support.end(), subset.begin(),
                             subset.end()))
            continue;
          Monomial rest;
          rest.coefficient = m.coefficient;
          for (std::int64_t var : support)
            if (!subset.count(var)) rest.variables.push_back(var);
          stripped.push_back(std::move(rest));
        }
        const double dw = enumerate(stripped);
        const double dg = expectation(derivative(poly, alpha), space);
        worst = std::max(worst,
                         std::abs(dg - dw) / std::max(1.0, std::abs(dw)));
      }

      if (max_derivative_expectation(poly, space, poly.degree() + 1) != 0.0 ||
          max_derivative_expectation(poly, space, poly.degree() + 3) != 0.0)
        ++bad_beyond_degree;
    }
    std::ostringstream d;
    d << "worst scaled error " << fmt(worst, 3) << " over 200 polynomials"
      << " (tolerance 1e-12); " << bad_beyond_degree
      << " nonzero E_d beyond degree";
    report(4, worst <= kTol && bad_beyond_degree == 0, d.str());
  }

  // --- 5: r4 expectation agreement across three computations ---------------
  {
    constexpr double kTol = 1e-9;
    const ProbabilityProfile profile{};
    const VariableSpace priced = VariableSpace::from_profile(profile);
    double worst_methods = 0.0, worst_poly = 0.0;
    for (std::int64_t n = 10; n <= 500; n += 10) {
      const double walked = expected_r4(profile, n, R4Method::kEnumerate);
      const double convolved = expected_r4(profile, n, R4Method::kConvolution);
      const double via_poly = expectation(build_r4_polynomial(n), priced);
      worst_poly = std::max(worst_poly, rel_gap(walked, via_poly));
      worst_poly = std::max(worst_poly, rel_gap(convolved, via_poly));
    }
    for (std::int64_t n = 200; n <= 2000; n += 20) {
      worst_methods = std::max(
          worst_methods,
          rel_gap(expected_r4(profile, n, R4Method::kEnumerate),
                  expected_r4(profile, n, R4Method::kConvolution)));
    }
    std::ostringstream d;
    d << "worst polynomial-vs-method gap " << fmt(worst_poly, 3)
      << " (50 n <= 500), worst enumerate-vs-convolution gap "
      << fmt(worst_methods, 3) << " (n = 200..2000 step 20), tolerance 1e-9";
    report(5, worst_poly <= kTol && worst_methods <= kTol, d.str());
  }

  // --- 6: normalized power sums stay near their limiting ratios ------------
  {
    const auto start = Clock::now();
    const std::vector<double> exps{-5.0 / 7.0, -3.0 / 7.0, 0.0};
    const std::vector<std::int64_t> limits{1000, 10000, 100000, 1000000};
    const std::vector<PowerSumRatio> rows =
        power_sum_ratio_profile(exps, exps, limits);
    double lo = rows.front().ratio, hi = rows.front().ratio, drift = 0.0;
    for (const PowerSumRatio &row : rows) {
      lo = std::min(lo, row.ratio);
      hi = std::max(hi, row.ratio);
    }
    for (std::size_t g = 0; g < rows.size(); g += limits.size()) {
      for (std::size_t i = 1; i < limits.size(); ++i) {
        drift = std::max(drift, std::abs(rows[g + i].ratio /
                                             rows[g + i - 1].ratio -
                                         1.0));
      }
    }
    const double elapsed = seconds_since(start);
    std::ostringstream d;
    d << "ratios in [" << fmt(lo) << ", " << fmt(hi)
      << "] (need [0.2, 20]), worst successive-decade drift "
      << fmt(100.0 * drift, 3) << "% (need < 10%), 9 exponent pairs x 4 "
      << "limits, " << fmt(elapsed, 3) << " s (budget 30 s)";
    report(6, lo >= 0.2 && hi <= 20.0 && drift < 0.10 && elapsed < 30.0,
           d.str());
  }

  // --- 7, 8, 9 share one experiment: 30 seeds at bound 2^20 with the zero
  // and envelope window pinned to [1e4, 1e6]. Membership draws and the
  // violating-element rule depend only on values up to the point probed, so
  // the window statistics coincide with a run bounded at 1e6 exactly.
  ExperimentConfig config;
  config.bound = 1 << 20;
  for (std::uint64_t s = 1; s <= 30; ++s) config.seeds.push_back(s);
  config.window_lo = 10000;
  config.window_hi = 1000000;
  const ExperimentReport experiment = run_theorem_experiment(config);

  {
    const double target = 1.0 / 7.0;
    const double slope =
        experiment.fit_full_valid ? experiment.fit_full.slope : 0.0;
    std::ostringstream d;
    d << "fitted growth exponent " << fmt(slope) << " (stderr "
      << fmt(experiment.fit_full.slope_stderr, 3) << ", target 1/7 = "
      << fmt(target) << ", tolerance 0.05), 30 seeds, bound 2^20";
    report(7, experiment.fit_full_valid && std::abs(slope - target) <= 0.05,
           d.str());
  }

  {
    // First 20 seeds carry the zero-window claim. Every reported zero is
    // re-checked here against a fresh single-n count.
    std::int64_t zero_free = 0;
    std::int64_t rechecked = 0, recheck_failures = 0;
    bool flags_ok = true;
    std::vector<std::int64_t> zero_counts;
    for (std::size_t i = 0; i < 20; ++i) {
      const SeedOutcome &o = experiment.outcomes[i];
      if (o.zero_count == 0) ++zero_free;
      zero_counts.push_back(o.zero_count);
      flags_ok = flags_ok && o.zeros_revalidated && o.recount_ok;
      const std::vector<std::int64_t> pruned =
          prune(sample_set(config.profile, config.bound, o.seed).elements);
      for (std::int64_t z : o.zero_locations) {
        ++rechecked;
        if (count_strict(pruned, z, 4) != 0) ++recheck_failures;
      }
    }
    const double fraction = static_cast<double>(zero_free) / 20.0;
    std::sort(zero_counts.begin(), zero_counts.end());
    std::ostringstream d;
    d << "zero-free fraction " << fmt(fraction, 3) << " over 20 seeds (need "
      << ">= 0.90), window [1e4, 1e6], per-seed zero counts "
      << zero_counts.front() << ".." << zero_counts.back() << " (median "
      << zero_counts[10] << "); " << recheck_failures << " of " << rechecked
      << " reported zeros failed re-validation";
    report(8,
           fraction >= 0.90 && recheck_failures == 0 && flags_ok,
           d.str());
  }

  {
    std::int64_t within = 0;
    double worst_constant = 0.0;
    for (const SeedOutcome &o : experiment.outcomes) {
      if (o.difference.envelope_constant <= 1.0) ++within;
      worst_constant =
          std::max(worst_constant, o.difference.envelope_constant);
    }
    const double fraction =
        static_cast<double>(within) /
        static_cast<double>(experiment.outcomes.size());
    std::ostringstream d;
    d << "difference envelope constant <= 1 for " << fmt(100.0 * fraction, 4)
      << "% of 30 seeds (need >= 95%), worst constant "
      << fmt(worst_constant, 3)
      << "; a negative difference would have aborted the run (none did)";
    report(9, fraction >= 0.95, d.str());
  }

  // --- 10: concentration threshold is never crossed empirically ------------
  {
    constexpr std::int64_t kCandidateCap = 8'000'000;
    bool pass = true;
    std::ostringstream d;
    for (std::int64_t n : {std::int64_t{200}, std::int64_t{500}}) {
      const MultilinearPolynomial poly = build_r4_polynomial(n);
      const VariableSpace priced = VariableSpace::from_profile({});
      ConcentrationQuery query;
      query.lambda = 20.0 * std::log(static_cast<double>(n));
      query.c_k = 1.0;
      query.n = n;
      const double threshold =
          concentration_threshold(poly, priced, query, kCandidateCap);
      const MonteCarloSummary mc =
          monte_carlo_deviation(poly, priced, 10000, 2026, threshold);
      pass = pass && mc.tail_frequency <= 0.01;
      d << "n=" << n << ": tail frequency " << fmt(mc.tail_frequency, 3)
        << " (need <= 0.01), threshold " << fmt(threshold, 3)
        << ", max deviation " << fmt(mc.deviation_max, 4) << "; ";
    }
    d << "10^4 trials each, lambda = 20 ln n, C_k = 1";
    report(10, pass, d.str());
  }

  // --- 11: identical configs serialize byte-identically --------------------
  {
    ExperimentConfig small;
    small.bound = 20000;
    small.seeds = {5, 1, 9};
    const std::string first = serialize_report(run_theorem_experiment(small));
    const std::string second = serialize_report(run_theorem_experiment(small));
    std::ostringstream d;
    d << "two runs of one config serialized to " << first.size()
      << " bytes each, byte-identical: " << (first == second ? "yes" : "no")
      << " (command-level repeat covered by the cli_checks test)";
    report(11, !first.empty() && first == second, d.str());
  }

  return failures;
}

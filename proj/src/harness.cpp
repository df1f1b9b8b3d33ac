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

#include "sidon4/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sidon4/repcount.hpp"
#include "sidon4/rng.hpp"
#include "sidon4/sidon.hpp"
#include "sidon4/version.hpp"

namespace sidon4 {

ExperimentConfig ExperimentConfig::normalized() const {
  ExperimentConfig c = *this;
  c.profile.validate();
  if (c.bound < 12)
    throw std::invalid_argument("experiment: bound must be >= 12");
  if (c.seeds.empty())
    throw std::invalid_argument("experiment: at least one seed required");
  if (c.order < 2 || c.order > 4)
    throw std::invalid_argument("experiment: order must be in {2, 3, 4}");
  if (c.window_hi == 0) c.window_hi = c.bound;
  if (c.window_lo < 1 || c.window_lo > c.window_hi || c.window_hi > c.bound)
    throw std::invalid_argument("experiment: window must sit inside [1, bound]");
  if (c.fit_lo == 0) c.fit_lo = std::max<std::int64_t>(c.bound / 256, 16);
  if (c.fit_hi == 0) c.fit_hi = c.bound;
  if (c.fit_lo < 1 || c.fit_lo >= c.fit_hi || c.fit_hi > c.bound)
    throw std::invalid_argument("experiment: fit range must sit inside [1, bound]");
  if (c.bin_count < 3)
    throw std::invalid_argument("experiment: at least 3 bins required");
  if (c.fit_hi - c.fit_lo < c.bin_count)
    throw std::invalid_argument("experiment: fit range narrower than bin count");
  if (!(c.envelope_exponent > 0.0))
    throw std::invalid_argument("experiment: envelope exponent must be > 0");
  if (c.zero_location_cap < 0 || c.revalidate_cap < 0)
    throw std::invalid_argument("experiment: caps must be >= 0");
  return c;
}

ExponentFit fit_growth_exponent(std::span<const double> ns,
                                std::span<const double> values) {
  if (ns.size() != values.size())
    throw std::invalid_argument("fit_growth_exponent: length mismatch");
  std::vector<double> lx;
  std::vector<double> ly;
  ExponentFit fit;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] >= 1.0))
      throw std::invalid_argument("fit_growth_exponent: n must be >= 1");
    if (values[i] > 0.0) {
      lx.push_back(std::log(ns[i]));
      ly.push_back(std::log(values[i]));
    } else {
      ++fit.skipped_points;
    }
  }
  const std::size_t k = lx.size();
  if (k < 3)
    throw std::invalid_argument(
        "fit_growth_exponent: fewer than 3 positive points");
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) /
                    static_cast<double>(k);
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) /
                    static_cast<double>(k);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_growth_exponent: degenerate abscissas");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    rss += r * r;
  }
  fit.slope_stderr =
      std::sqrt(std::max(rss, 0.0) / static_cast<double>(k - 2) / sxx);
  fit.used_points = static_cast<std::int64_t>(k);
  return fit;
}

DifferenceStatistic difference_statistic(std::span<const std::int64_t> full_row,
                                         std::span<const std::int64_t> pruned_row,
                                         std::int64_t lo, std::int64_t hi,
                                         double envelope_exponent) {
  if (lo < 1 || lo > hi)
    throw std::invalid_argument("difference_statistic: bad window");
  if (full_row.size() != pruned_row.size() ||
      static_cast<std::int64_t>(full_row.size()) <= hi)
    throw std::invalid_argument("difference_statistic: rows too short");
  DifferenceStatistic stat;
  stat.window_lo = lo;
  stat.window_hi = hi;
  std::int64_t exceed = 0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const std::int64_t d = full_row[static_cast<std::size_t>(n)] -
                           pruned_row[static_cast<std::size_t>(n)];
    if (d < 0)
      throw std::logic_error(
          "difference_statistic: pruning increased a count");
    if (d > stat.max_difference) {
      stat.max_difference = d;
      stat.argmax = n;
    }
    if (n >= 2) {
      const double envelope =
          std::pow(std::log(static_cast<double>(n)), envelope_exponent);
      stat.envelope_constant =
          std::max(stat.envelope_constant, static_cast<double>(d) / envelope);
      if (static_cast<double>(d) > envelope) ++exceed;
    }
  }
  stat.exceed_fraction =
      static_cast<double>(exceed) / static_cast<double>(hi - lo + 1);
  return stat;
}

DifferenceStatistic difference_statistic(std::span<const std::int64_t> set,
                                         std::int64_t lo, std::int64_t hi,
                                         double envelope_exponent) {
  const std::vector<std::int64_t> pruned = prune(set);
  const RepCountTable full = rep_table(set, 4, hi);
  const RepCountTable kept = rep_table(pruned, 4, hi);
  return difference_statistic(full.strict_row(), kept.strict_row(), lo, hi,
                              envelope_exponent);
}

std::vector<std::int64_t> geometric_bin_edges(std::int64_t lo, std::int64_t hi,
                                              int bins) {
  if (lo < 1 || hi <= lo || bins < 1)
    throw std::invalid_argument("geometric_bin_edges: bad range");
  if (hi - lo < bins)
    throw std::invalid_argument("geometric_bin_edges: range narrower than bins");
  std::vector<std::int64_t> edges(static_cast<std::size_t>(bins) + 1);
  const double llo = std::log(static_cast<double>(lo));
  const double lhi = std::log(static_cast<double>(hi));
  edges[0] = lo;
  for (int i = 1; i < bins; ++i) {
    const double t = llo + (lhi - llo) * static_cast<double>(i) /
                               static_cast<double>(bins);
    const auto e = static_cast<std::int64_t>(std::llround(std::exp(t)));
    edges[static_cast<std::size_t>(i)] =
        std::max(edges[static_cast<std::size_t>(i) - 1] + 1, e);
  }
  edges[static_cast<std::size_t>(bins)] = hi;
  if (edges[static_cast<std::size_t>(bins)] <=
      edges[static_cast<std::size_t>(bins) - 1])
    throw std::invalid_argument("geometric_bin_edges: range narrower than bins");
  return edges;
}

std::vector<double> geometric_bin_centers(std::span<const std::int64_t> edges) {
  std::vector<double> centers;
  centers.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    centers.push_back(std::sqrt(static_cast<double>(edges[i]) *
                                static_cast<double>(edges[i + 1])));
  return centers;
}

std::vector<double> binned_means(std::span<const std::int64_t> row,
                                 std::span<const std::int64_t> edges) {
  if (edges.size() < 2)
    throw std::invalid_argument("binned_means: need at least one bin");
  if (static_cast<std::int64_t>(row.size()) <= edges.back())
    throw std::invalid_argument("binned_means: row shorter than last edge");
  std::vector<double> means;
  means.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const std::int64_t last_bin = (i + 2 == edges.size()) ? 1 : 0;
    std::int64_t sum = 0;
    std::int64_t count = 0;
    for (std::int64_t n = edges[i]; n < edges[i + 1] + last_bin; ++n) {
      sum += row[static_cast<std::size_t>(n)];
      ++count;
    }
    means.push_back(static_cast<double>(sum) / static_cast<double>(count));
  }
  return means;
}

namespace {

constexpr std::uint64_t kRecountSalt = 0x7265636f756e7421ULL;

SeedOutcome run_seed(const ExperimentConfig &config,
                     std::span<const std::int64_t> edges, std::uint64_t seed) {
  SeedOutcome out;
  out.seed = seed;
  const SampledSet sample = sample_set(config.profile, config.bound, seed);
  const std::vector<std::int64_t> &full_set = sample.elements;
  const ViolationSet violations = violating_set(full_set);
  const std::vector<std::int64_t> pruned = prune(full_set);
  out.set_size = static_cast<std::int64_t>(full_set.size());
  out.violating_size = static_cast<std::int64_t>(violations.elements.size());
  out.pruned_size = static_cast<std::int64_t>(pruned.size());
  out.pruned_is_sidon = is_sidon(pruned);

  const RepCountTable full_table =
      rep_table(full_set, config.order, config.bound);
  const RepCountTable pruned_table =
      rep_table(pruned, config.order, config.bound);
  const std::span<const std::int64_t> full = full_table.strict_row();
  const std::span<const std::int64_t> kept = pruned_table.strict_row();

  std::int64_t last_zero = 0;
  for (std::int64_t n = config.window_lo; n <= config.window_hi; ++n) {
    if (kept[static_cast<std::size_t>(n)] == 0) {
      ++out.zero_count;
      last_zero = n;
      if (static_cast<std::int64_t>(out.zero_locations.size()) <
          config.zero_location_cap)
        out.zero_locations.push_back(n);
    }
  }
  out.clear_from = out.zero_count > 0 ? last_zero + 1 : config.window_lo;

  out.zeros_revalidated = true;
  const std::int64_t recheck =
      std::min<std::int64_t>(config.revalidate_cap,
                             static_cast<std::int64_t>(out.zero_locations.size()));
  for (std::int64_t i = 0; i < recheck; ++i)
    if (count_strict(pruned, out.zero_locations[static_cast<std::size_t>(i)],
                     config.order) != 0)
      out.zeros_revalidated = false;

  out.recount_ok = true;
  const std::uint64_t spot_stream = derive_stream(seed, kRecountSalt);
  const std::uint64_t width =
      static_cast<std::uint64_t>(config.window_hi - config.window_lo + 1);
  for (std::int64_t i = 0; i < config.revalidate_cap; ++i) {
    const std::int64_t n =
        config.window_lo +
        static_cast<std::int64_t>(stream_value(spot_stream, i) % width);
    if (count_strict(pruned, n, config.order) !=
            kept[static_cast<std::size_t>(n)] ||
        count_strict(full_set, n, config.order) !=
            full[static_cast<std::size_t>(n)])
      out.recount_ok = false;
  }

  out.difference = difference_statistic(full, kept, config.window_lo,
                                        config.window_hi,
                                        config.envelope_exponent);
  out.bin_means_full = binned_means(full, edges);
  out.bin_means_pruned = binned_means(kept, edges);
  return out;
}

}  // namespace

ExperimentReport run_theorem_experiment(const ExperimentConfig &raw) {
  const ExperimentConfig config = raw.normalized();
  ExperimentReport report;
  report.tool_version = kToolVersion;
  report.schema_version = kReportSchemaVersion;
  report.config = config;
  report.bin_edges =
      geometric_bin_edges(config.fit_lo, config.fit_hi, config.bin_count);
  report.bin_centers = geometric_bin_centers(report.bin_edges);
  for (std::uint64_t seed : config.seeds)
    report.outcomes.push_back(run_seed(config, report.bin_edges, seed));

  // Seed-sorted iteration keeps every aggregate independent of the order
  // the seeds were listed in.
  std::vector<std::size_t> by_seed(report.outcomes.size());
  std::iota(by_seed.begin(), by_seed.end(), std::size_t{0});
  std::sort(by_seed.begin(), by_seed.end(), [&](std::size_t a, std::size_t b) {
    return report.outcomes[a].seed != report.outcomes[b].seed
               ? report.outcomes[a].seed < report.outcomes[b].seed
               : a < b;
  });

  const auto count = static_cast<double>(report.outcomes.size());
  std::int64_t zero_free = 0;
  std::vector<std::int64_t> clear_values;
  report.mean_bin_full.assign(report.bin_centers.size(), 0.0);
  report.mean_bin_pruned.assign(report.bin_centers.size(), 0.0);
  report.all_sidon = true;
  report.all_revalidated = true;
  double exceed_sum = 0.0;
  for (std::size_t idx : by_seed) {
    const SeedOutcome &o = report.outcomes[idx];
    if (o.zero_count == 0) ++zero_free;
    clear_values.push_back(o.clear_from);
    for (std::size_t k = 0; k < report.bin_centers.size(); ++k) {
      report.mean_bin_full[k] += o.bin_means_full[k];
      report.mean_bin_pruned[k] += o.bin_means_pruned[k];
    }
    report.all_sidon = report.all_sidon && o.pruned_is_sidon;
    report.all_revalidated =
        report.all_revalidated && o.zeros_revalidated && o.recount_ok;
    report.max_envelope_constant = std::max(report.max_envelope_constant,
                                            o.difference.envelope_constant);
    exceed_sum += o.difference.exceed_fraction;
  }
  for (std::size_t k = 0; k < report.bin_centers.size(); ++k) {
    report.mean_bin_full[k] /= count;
    report.mean_bin_pruned[k] /= count;
  }
  report.zero_free_fraction = static_cast<double>(zero_free) / count;
  report.mean_exceed_fraction = exceed_sum / count;
  std::sort(clear_values.begin(), clear_values.end());
  const std::size_t mid = clear_values.size() / 2;
  report.median_clear_from =
      clear_values.size() % 2 == 1
          ? static_cast<double>(clear_values[mid])
          : (static_cast<double>(clear_values[mid - 1]) +
             static_cast<double>(clear_values[mid])) /
                2.0;
  try {
    report.fit_full =
        fit_growth_exponent(report.bin_centers, report.mean_bin_full);
    report.fit_full_valid = true;
  } catch (const std::invalid_argument &) {
    report.fit_full_valid = false;
  }
  try {
    report.fit_pruned =
        fit_growth_exponent(report.bin_centers, report.mean_bin_pruned);
    report.fit_pruned_valid = true;
  } catch (const std::invalid_argument &) {
    report.fit_pruned_valid = false;
  }
  return report;
}

}  // namespace sidon4

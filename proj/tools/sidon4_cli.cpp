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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sidon4/expectations.hpp"
#include "sidon4/harness.hpp"
#include "sidon4/io.hpp"
#include "sidon4/kimvu.hpp"
#include "sidon4/repcount.hpp"
#include "sidon4/sampler.hpp"
#include "sidon4/sidon.hpp"
#include "sidon4/version.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

std::pair<std::int64_t, std::int64_t> parse_range(const std::string &text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("range must look like lo:hi, got '" + text +
                                "'");
  std::size_t used = 0;
  const std::int64_t lo = std::stoll(text.substr(0, colon), &used);
  if (used != colon)
    throw std::invalid_argument("bad range low end in '" + text + "'");
  const std::string rest = text.substr(colon + 1);
  const std::int64_t hi = std::stoll(rest, &used);
  if (used != rest.size())
    throw std::invalid_argument("bad range high end in '" + text + "'");
  if (lo > hi) throw std::invalid_argument("empty range '" + text + "'");
  return {lo, hi};
}

void run_sample(const std::string &exponent, std::int64_t limit,
                std::uint64_t seed, const std::string &format) {
  const sidon4::ProbabilityProfile profile = sidon4::parse_profile(exponent);
  const sidon4::SampledSet set = sidon4::sample_set(profile, limit, seed);
  if (format == "json") {
    ordered_json j;
    j["profile"] = profile.to_string();
    j["seed"] = set.seed;
    j["bound"] = set.bound;
    j["size"] = set.elements.size();
    j["elements"] = set.elements;
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "element\n";
    for (std::int64_t v : set.elements) std::cout << v << "\n";
  } else {
    for (std::size_t i = 0; i < set.elements.size(); ++i)
      std::cout << (i ? " " : "") << set.elements[i];
    std::cout << "\n";
  }
}

void run_count(const std::string &set_file, int order, std::int64_t limit,
               const std::string &format) {
  const std::vector<std::int64_t> set = sidon4::read_set_file(set_file);
  const sidon4::RepCountTable table = sidon4::rep_table(set, order, limit);
  if (format == "json") {
    ordered_json j;
    j["set_file"] = set_file;
    j["set_size"] = set.size();
    j["order"] = order;
    j["limit"] = limit;
    j["columns"] = {"n", "R", "r", "r_star"};
    ordered_json rows = ordered_json::array();
    for (std::int64_t n = 1; n <= limit; ++n)
      rows.push_back({n, table.total(n), table.strict(n), table.repeated(n)});
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    if (format == "csv") std::cout << "n,R,r,r_star\n";
    const char sep = format == "csv" ? ',' : ' ';
    for (std::int64_t n = 1; n <= limit; ++n)
      std::cout << n << sep << table.total(n) << sep << table.strict(n) << sep
                << table.repeated(n) << "\n";
  }
}

void run_prune(const std::string &set_file, const std::string &emit,
               const std::string &format) {
  const std::vector<std::int64_t> set = sidon4::read_set_file(set_file);
  const sidon4::ViolationSet violations = sidon4::violating_set(set);
  const std::vector<std::int64_t> kept = sidon4::prune(set);
  const bool want_pruned = emit != "violations";
  const bool want_violations = emit != "pruned";
  if (format == "json") {
    ordered_json j;
    j["set_file"] = set_file;
    j["input_size"] = set.size();
    j["pruned_size"] = kept.size();
    j["violating_size"] = violations.elements.size();
    if (want_pruned) j["pruned"] = kept;
    if (want_violations) {
      ordered_json rows = ordered_json::array();
      for (std::size_t i = 0; i < violations.elements.size(); ++i) {
        const sidon4::ViolationWitness &w = violations.witnesses[i];
        ordered_json row;
        row["element"] = violations.elements[i];
        row["partner"] = w.partner;
        row["left"] = w.left;
        row["right"] = w.right;
        rows.push_back(row);
      }
      j["violations"] = rows;
    }
    std::cout << j.dump(2) << "\n";
  } else if (format == "csv") {
    std::cout << "element,status,partner,left,right\n";
    std::size_t vi = 0;
    for (std::int64_t v : set) {
      const bool removed = vi < violations.elements.size() &&
                           violations.elements[vi] == v;
      if (removed && want_violations) {
        const sidon4::ViolationWitness &w = violations.witnesses[vi];
        std::cout << v << ",removed," << w.partner << "," << w.left << ","
                  << w.right << "\n";
      } else if (!removed && want_pruned) {
        std::cout << v << ",kept,,,\n";
      }
      if (removed) ++vi;
    }
  } else {
    if (want_pruned) {
      std::cout << "pruned:";
      for (std::int64_t v : kept) std::cout << " " << v;
      std::cout << "\n";
    }
    if (want_violations) {
      for (std::size_t i = 0; i < violations.elements.size(); ++i) {
        const sidon4::ViolationWitness &w = violations.witnesses[i];
        std::cout << "violating " << violations.elements[i] << ": "
                  << violations.elements[i] << " + " << w.partner << " = "
                  << w.left << " + " << w.right << "\n";
      }
    }
  }
}

void run_power_ratio(const std::string &exponent, double alpha, double beta,
                     const std::vector<std::int64_t> &limits,
                     const std::string &format) {
  const double alphas[] = {alpha};
  const double betas[] = {beta};
  const std::vector<sidon4::PowerSumRatio> rows =
      sidon4::power_sum_ratio_profile(alphas, betas, limits);
  if (format == "json") {
    ordered_json j;
    j["exponent"] = exponent;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["limits"] = limits;
    ordered_json out = ordered_json::array();
    for (const sidon4::PowerSumRatio &r : rows) {
      ordered_json row;
      row["limit"] = r.limit;
      row["sum"] = r.sum;
      row["ratio"] = r.ratio;
      out.push_back(row);
    }
    j["rows"] = out;
    std::cout << j.dump(2) << "\n";
  } else {
    if (format == "csv") std::cout << "alpha,beta,limit,sum,ratio\n";
    const char sep = format == "csv" ? ',' : ' ';
    for (const sidon4::PowerSumRatio &r : rows)
      std::cout << r.alpha << sep << r.beta << sep << r.limit << sep << r.sum
                << sep << r.ratio << "\n";
  }
}

void run_expected_r4(const std::string &exponent, std::int64_t n,
                     const std::string &method, std::int64_t cap,
                     const std::string &format) {
  const sidon4::ProbabilityProfile profile = sidon4::parse_profile(exponent);
  const bool want_enum = method != "convolution";
  const bool want_conv = method != "enumerate";
  double by_enum = 0.0;
  double by_conv = 0.0;
  if (want_enum)
    by_enum = sidon4::expected_r4(profile, n, sidon4::R4Method::kEnumerate, cap);
  if (want_conv)
    by_conv = sidon4::expected_r4(profile, n, sidon4::R4Method::kConvolution);
  if (format == "json") {
    ordered_json j;
    j["exponent"] = profile.to_string();
    j["n"] = n;
    j["method"] = method;
    if (want_enum) j["enumerate"] = by_enum;
    if (want_conv) j["convolution"] = by_conv;
    if (want_enum && want_conv) j["gap"] = std::abs(by_enum - by_conv);
    std::cout << j.dump(2) << "\n";
  } else {
    if (format == "csv") std::cout << "n,method,value\n";
    const char sep = format == "csv" ? ',' : ' ';
    if (want_enum) std::cout << n << sep << "enumerate" << sep << by_enum << "\n";
    if (want_conv)
      std::cout << n << sep << "convolution" << sep << by_conv << "\n";
  }
}

void run_interaction(const std::string &exponent, int case_id, std::int64_t n,
                     const std::string &format) {
  const sidon4::ProbabilityProfile profile = sidon4::parse_profile(exponent);
  const double value = sidon4::interaction_sum(case_id, n, profile);
  if (format == "json") {
    ordered_json j;
    j["exponent"] = profile.to_string();
    j["case"] = case_id;
    j["n"] = n;
    j["value"] = value;
    std::cout << j.dump(2) << "\n";
  } else {
    if (format == "csv") std::cout << "case,n,value\n";
    const char sep = format == "csv" ? ',' : ' ';
    std::cout << case_id << sep << n << sep << value << "\n";
  }
}

void run_kimvu(const std::string &poly_kind, std::int64_t n,
               const std::string &exponent, const std::string &lambda_mode,
               double lambda_value, double ck, std::int64_t trials,
               std::uint64_t seed, std::int64_t candidate_cap,
               std::int64_t violation_cap) {
  const sidon4::ProbabilityProfile profile = sidon4::parse_profile(exponent);
  const sidon4::MultilinearPolynomial poly =
      poly_kind == "r4" ? sidon4::build_r4_polynomial(n)
                        : sidon4::build_violation_polynomial(n, violation_cap);
  const sidon4::VariableSpace space = sidon4::VariableSpace::from_profile(profile);
  double lambda = lambda_value;
  if (lambda_mode == "20logn" || lambda_mode == "32logn") {
    if (n < 2)
      throw std::invalid_argument("kimvu: log-scaled lambda needs n >= 2");
    lambda = (lambda_mode == "20logn" ? 20.0 : 32.0) *
             std::log(static_cast<double>(n));
  }
  const int k = std::max(poly.degree(), 1);
  const double e_ge0 =
      sidon4::max_derivative_expectation_from(poly, space, 0, candidate_cap);
  const double e_ge1 =
      sidon4::max_derivative_expectation_from(poly, space, 1, candidate_cap);
  sidon4::ConcentrationQuery query;
  query.lambda = lambda;
  query.k = k;
  query.c_k = ck;
  query.n = n;
  const double threshold =
      sidon4::concentration_threshold(poly, space, query, candidate_cap);
  const double tail = sidon4::tail_probability_bound(query);

  ordered_json j;
  j["poly"] = poly_kind;
  j["n"] = n;
  j["exponent"] = profile.to_string();
  j["variables"] = poly.variables().size();
  j["monomials"] = poly.monomials().size();
  j["degree"] = poly.degree();
  j["lambda_mode"] = lambda_mode;
  j["lambda"] = lambda;
  j["ck"] = ck;
  j["k"] = k;
  j["e_ge0"] = e_ge0;
  j["e_ge1"] = e_ge1;
  j["threshold"] = threshold;
  j["tail_bound"] = tail;
  j["trials"] = trials;
  if (trials > 0) {
    const sidon4::MonteCarloSummary mc =
        sidon4::monte_carlo_deviation(poly, space, trials, seed, threshold);
    ordered_json m;
    m["seed"] = mc.seed;
    m["expectation"] = mc.expectation;
    m["sample_mean"] = mc.sample_mean;
    m["deviation_p50"] = mc.deviation_p50;
    m["deviation_p90"] = mc.deviation_p90;
    m["deviation_p99"] = mc.deviation_p99;
    m["deviation_max"] = mc.deviation_max;
    m["tail_count"] = mc.tail_count;
    m["tail_frequency"] = mc.tail_frequency;
    j["mc"] = m;
  } else {
    j["mc"] = nullptr;
  }
  std::cout << j.dump(2) << "\n";
}

void run_verify(std::int64_t limit, const std::vector<std::uint64_t> &seeds,
                const std::string &exponent, const std::string &window,
                const std::string &fit, int bins, int order,
                std::int64_t zero_cap, std::int64_t revalidate_cap,
                const std::string &out_path, const std::string &csv_dir) {
  sidon4::ExperimentConfig config;
  config.profile = sidon4::parse_profile(exponent);
  config.bound = limit;
  config.seeds = seeds;
  config.order = order;
  config.bin_count = bins;
  config.zero_location_cap = zero_cap;
  config.revalidate_cap = revalidate_cap;
  if (!window.empty()) {
    const auto [lo, hi] = parse_range(window);
    config.window_lo = lo;
    config.window_hi = hi;
  }
  if (!fit.empty()) {
    const auto [lo, hi] = parse_range(fit);
    config.fit_lo = lo;
    config.fit_hi = hi;
  }
  const sidon4::ExperimentReport report = sidon4::run_theorem_experiment(config);
  const std::string text = sidon4::serialize_report(report);
  if (out_path.empty())
    std::cout << text;
  else
    sidon4::write_text_file(out_path, text);

  if (!csv_dir.empty()) {
    const sidon4::ExperimentConfig resolved = config.normalized();
    std::filesystem::create_directories(csv_dir);
    for (std::uint64_t seed : resolved.seeds) {
      const sidon4::SampledSet sample =
          sidon4::sample_set(resolved.profile, resolved.bound, seed);
      const std::vector<std::int64_t> kept = sidon4::prune(sample.elements);
      const sidon4::RepCountTable full_table =
          sidon4::rep_table(sample.elements, resolved.order, resolved.window_hi);
      const sidon4::RepCountTable kept_table =
          sidon4::rep_table(kept, resolved.order, resolved.window_hi);
      std::ostringstream csv;
      csv << "n,r4_full,r4_pruned,diff\n";
      for (std::int64_t n = resolved.window_lo; n <= resolved.window_hi; ++n)
        csv << n << "," << full_table.strict(n) << "," << kept_table.strict(n)
            << "," << full_table.strict(n) - kept_table.strict(n) << "\n";
      const std::filesystem::path path =
          std::filesystem::path(csv_dir) / ("seed_" + std::to_string(seed) + ".csv");
      sidon4::write_text_file(path.string(), csv.str());
    }
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Random Sidon-set construction and verification toolkit"};
  app.set_version_flag("--version", std::string(sidon4::kToolVersion));
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "csv", "plain"});

  auto *sample_cmd =
      app.add_subcommand("sample", "Draw the seeded random set below a bound");
  std::string sample_exp = "5/7";
  std::int64_t sample_limit = 0;
  std::uint64_t sample_seed = 1;
  std::string sample_fmt = "json";
  sample_cmd->add_option("--exponent", sample_exp, "membership decay, num/den")
      ->capture_default_str();
  sample_cmd->add_option("--limit", sample_limit, "largest candidate integer")
      ->required();
  sample_cmd->add_option("--seed", sample_seed, "stream seed")
      ->capture_default_str();
  sample_cmd->add_option("--format", sample_fmt)->check(formats)
      ->capture_default_str();
  sample_cmd->callback(
      [&] { run_sample(sample_exp, sample_limit, sample_seed, sample_fmt); });

  auto *count_cmd = app.add_subcommand(
      "count", "Tabulate representation counts R, r, r_star for a set file");
  std::string count_file;
  int count_order = 4;
  std::int64_t count_limit = 0;
  std::string count_fmt = "csv";
  count_cmd->add_option("--set-file", count_file, "one integer per line")
      ->required();
  count_cmd->add_option("--order", count_order, "summands per representation")
      ->check(CLI::Range(2, 4))
      ->capture_default_str();
  count_cmd->add_option("--limit", count_limit, "largest n tabulated")
      ->required();
  count_cmd->add_option("--format", count_fmt)->check(formats)
      ->capture_default_str();
  count_cmd->callback(
      [&] { run_count(count_file, count_order, count_limit, count_fmt); });

  auto *prune_cmd = app.add_subcommand(
      "prune", "Remove elements that break the distinct-pair-sum property");
  std::string prune_file;
  std::string prune_emit = "both";
  std::string prune_fmt = "json";
  prune_cmd->add_option("--set-file", prune_file)->required();
  prune_cmd->add_option("--emit", prune_emit)
      ->check(CLI::IsMember({"pruned", "violations", "both"}))
      ->capture_default_str();
  prune_cmd->add_option("--format", prune_fmt)->check(formats)
      ->capture_default_str();
  prune_cmd->callback([&] { run_prune(prune_file, prune_emit, prune_fmt); });

  auto *expect_cmd =
      app.add_subcommand("expect", "Analytic expectation calculators");
  expect_cmd->require_subcommand(1);

  auto *lemma4_cmd = expect_cmd->add_subcommand(
      "lemma4", "Normalized power sums against their limiting ratio");
  std::string l4_exp = "5/7";
  double l4_alpha = 0.0;
  double l4_beta = 0.0;
  std::vector<std::int64_t> l4_limits;
  std::string l4_fmt = "json";
  lemma4_cmd->add_option("--exponent", l4_exp)->capture_default_str();
  lemma4_cmd->add_option("--alpha", l4_alpha)->required();
  lemma4_cmd->add_option("--beta", l4_beta)->required();
  lemma4_cmd->add_option("--limits", l4_limits)->required()->delimiter(',');
  lemma4_cmd->add_option("--format", l4_fmt)->check(formats)
      ->capture_default_str();
  lemma4_cmd->callback(
      [&] { run_power_ratio(l4_exp, l4_alpha, l4_beta, l4_limits, l4_fmt); });

  auto *r4_cmd = expect_cmd->add_subcommand(
      "r4", "Expected strict 4-representation count of a random set");
  std::string r4_exp = "5/7";
  std::int64_t r4_n = 0;
  std::string r4_method = "both";
  std::int64_t r4_cap = 2000;
  std::string r4_fmt = "json";
  r4_cmd->add_option("--exponent", r4_exp)->capture_default_str();
  r4_cmd->add_option("--n", r4_n)->required();
  r4_cmd->add_option("--method", r4_method)
      ->check(CLI::IsMember({"enumerate", "convolution", "both"}))
      ->capture_default_str();
  r4_cmd->add_option("--cap", r4_cap, "largest n the direct walk accepts")
      ->capture_default_str();
  r4_cmd->add_option("--format", r4_fmt)->check(formats)->capture_default_str();
  r4_cmd->callback(
      [&] { run_expected_r4(r4_exp, r4_n, r4_method, r4_cap, r4_fmt); });

  auto *lemma6_cmd = expect_cmd->add_subcommand(
      "lemma6", "Theta-weighted composition-collision interaction sums");
  std::string l6_exp = "5/7";
  int l6_case = 0;
  std::int64_t l6_n = 0;
  std::string l6_fmt = "json";
  lemma6_cmd->add_option("--exponent", l6_exp)->capture_default_str();
  lemma6_cmd->add_option("--case", l6_case)->required()->check(CLI::Range(1, 6));
  lemma6_cmd->add_option("--n", l6_n)->required();
  lemma6_cmd->add_option("--format", l6_fmt)->check(formats)
      ->capture_default_str();
  lemma6_cmd->callback([&] { run_interaction(l6_exp, l6_case, l6_n, l6_fmt); });

  auto *kimvu_cmd = app.add_subcommand(
      "kimvu", "Concentration threshold, tail bound and Monte Carlo check");
  std::string kv_poly = "r4";
  std::int64_t kv_n = 0;
  std::string kv_exp = "5/7";
  std::string kv_mode = "20logn";
  double kv_lambda = 0.0;
  double kv_ck = 1.0;
  std::int64_t kv_trials = 0;
  std::uint64_t kv_seed = 1;
  std::int64_t kv_cap = 1'000'000;
  std::int64_t kv_vcap = 100;
  std::string kv_fmt = "json";
  kimvu_cmd->add_option("--poly", kv_poly)
      ->check(CLI::IsMember({"r4", "violation"}))
      ->capture_default_str();
  kimvu_cmd->add_option("--n", kv_n)->required();
  kimvu_cmd->add_option("--exponent", kv_exp)->capture_default_str();
  kimvu_cmd->add_option("--lambda-mode", kv_mode)
      ->check(CLI::IsMember({"20logn", "32logn", "value"}))
      ->capture_default_str();
  kimvu_cmd->add_option("--lambda", kv_lambda,
                        "used when --lambda-mode value");
  kimvu_cmd->add_option("--ck", kv_ck)->capture_default_str();
  kimvu_cmd->add_option("--trials", kv_trials)->capture_default_str();
  kimvu_cmd->add_option("--seed", kv_seed)->capture_default_str();
  kimvu_cmd->add_option("--cap", kv_cap, "derivative candidate cap")
      ->capture_default_str();
  kimvu_cmd->add_option("--violation-cap", kv_vcap)->capture_default_str();
  kimvu_cmd->add_option("--format", kv_fmt)->check(CLI::IsMember({"json"}))
      ->capture_default_str();
  kimvu_cmd->callback([&] {
    run_kimvu(kv_poly, kv_n, kv_exp, kv_mode, kv_lambda, kv_ck, kv_trials,
              kv_seed, kv_cap, kv_vcap);
  });

  auto *verify_cmd = app.add_subcommand(
      "verify-theorem",
      "Sample, prune, count and report over a seed list, deterministically");
  std::int64_t vt_limit = 0;
  std::vector<std::uint64_t> vt_seeds;
  std::string vt_exp = "5/7";
  std::string vt_window;
  std::string vt_fit;
  int vt_bins = 24;
  int vt_order = 4;
  std::int64_t vt_zero_cap = 32;
  std::int64_t vt_reval = 8;
  std::string vt_out;
  std::string vt_csv_dir;
  verify_cmd->add_option("--limit", vt_limit)->required();
  verify_cmd->add_option("--seeds", vt_seeds)->required()->delimiter(',');
  verify_cmd->add_option("--exponent", vt_exp)->capture_default_str();
  verify_cmd->add_option("--window", vt_window, "zero/difference scan, lo:hi");
  verify_cmd->add_option("--fit", vt_fit, "growth-fit binning range, lo:hi");
  verify_cmd->add_option("--bins", vt_bins)->capture_default_str();
  verify_cmd->add_option("--order", vt_order)->check(CLI::Range(2, 4))
      ->capture_default_str();
  verify_cmd->add_option("--zero-cap", vt_zero_cap,
                         "zero locations kept per seed")
      ->capture_default_str();
  verify_cmd->add_option("--revalidate", vt_reval,
                         "direct recounts per seed")
      ->capture_default_str();
  verify_cmd->add_option("--out", vt_out, "report path (default stdout)");
  verify_cmd->add_option("--csv-dir", vt_csv_dir,
                         "write per-seed n,r4_full,r4_pruned,diff files here");
  verify_cmd->callback([&] {
    run_verify(vt_limit, vt_seeds, vt_exp, vt_window, vt_fit, vt_bins,
               vt_order, vt_zero_cap, vt_reval, vt_out, vt_csv_dir);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "sidon4: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

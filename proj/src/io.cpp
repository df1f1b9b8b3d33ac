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

#include "sidon4/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace sidon4 {
namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string &path, std::size_t line,
                       const std::string &what) {
  std::ostringstream msg;
  msg << path << ":" << line << ": " << what;
  throw std::runtime_error(msg.str());
}

std::string strip(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

ordered_json fit_json(bool valid, const ExponentFit &fit) {
  if (!valid) return nullptr;
  ordered_json j;
  j["slope"] = fit.slope;
  j["intercept"] = fit.intercept;
  j["slope_stderr"] = fit.slope_stderr;
  j["used_points"] = fit.used_points;
  j["skipped_points"] = fit.skipped_points;
  return j;
}

}  // namespace

std::vector<std::int64_t> read_set_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::vector<std::int64_t> set;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = strip(raw);
    if (text.empty() || text[0] == '#') continue;
    std::int64_t value = 0;
    std::size_t used = 0;
    try {
      value = std::stoll(text, &used);
    } catch (const std::exception &) {
      fail(path, line, "not an integer: '" + text + "'");
    }
    if (used != text.size()) fail(path, line, "trailing junk: '" + text + "'");
    if (value < 1) fail(path, line, "entries must be positive");
    if (!set.empty() && value <= set.back())
      fail(path, line, "entries must be strictly increasing");
    set.push_back(value);
  }
  return set;
}

void write_set_file(const std::string &path,
                    std::span<const std::int64_t> set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (std::int64_t v : set) out << v << "\n";
  if (!out) throw std::runtime_error(path + ": write failed");
}

std::string serialize_report(const ExperimentReport &report) {
  ordered_json j;
  j["schema_version"] = report.schema_version;
  j["tool_version"] = report.tool_version;
  j["log_base"] = "natural";

  ordered_json cfg;
  cfg["profile"] = report.config.profile.to_string();
  cfg["bound"] = report.config.bound;
  cfg["seeds"] = report.config.seeds;
  cfg["order"] = report.config.order;
  cfg["window"] = {report.config.window_lo, report.config.window_hi};
  cfg["fit_range"] = {report.config.fit_lo, report.config.fit_hi};
  cfg["bin_count"] = report.config.bin_count;
  cfg["envelope_exponent"] = report.config.envelope_exponent;
  cfg["zero_location_cap"] = report.config.zero_location_cap;
  cfg["revalidate_cap"] = report.config.revalidate_cap;
  j["config"] = cfg;

  j["bins"]["edges"] = report.bin_edges;
  j["bins"]["centers"] = report.bin_centers;

  ordered_json seeds = ordered_json::array();
  for (const SeedOutcome &o : report.outcomes) {
    ordered_json s;
    s["seed"] = o.seed;
    s["set_size"] = o.set_size;
    s["violating_size"] = o.violating_size;
    s["pruned_size"] = o.pruned_size;
    s["pruned_is_sidon"] = o.pruned_is_sidon;
    s["zero_count"] = o.zero_count;
    s["zero_locations"] = o.zero_locations;
    s["clear_from"] = o.clear_from;
    s["zeros_revalidated"] = o.zeros_revalidated;
    s["recount_ok"] = o.recount_ok;
    ordered_json d;
    d["max"] = o.difference.max_difference;
    d["argmax"] = o.difference.argmax;
    d["envelope_constant"] = o.difference.envelope_constant;
    d["exceed_fraction"] = o.difference.exceed_fraction;
    s["difference"] = d;
    s["bin_means_full"] = o.bin_means_full;
    s["bin_means_pruned"] = o.bin_means_pruned;
    seeds.push_back(s);
  }
  j["seeds"] = seeds;

  ordered_json agg;
  agg["zero_free_fraction"] = report.zero_free_fraction;
  agg["median_clear_from"] = report.median_clear_from;
  agg["mean_bin_full"] = report.mean_bin_full;
  agg["mean_bin_pruned"] = report.mean_bin_pruned;
  agg["fit_full"] = fit_json(report.fit_full_valid, report.fit_full);
  agg["fit_pruned"] = fit_json(report.fit_pruned_valid, report.fit_pruned);
  agg["max_envelope_constant"] = report.max_envelope_constant;
  agg["mean_exceed_fraction"] = report.mean_exceed_fraction;
  agg["all_sidon"] = report.all_sidon;
  agg["all_revalidated"] = report.all_revalidated;
  j["aggregate"] = agg;

  return j.dump(2) + "\n";
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace sidon4

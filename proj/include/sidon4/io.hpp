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
#include <string>
#include <vector>

#include "sidon4/harness.hpp"

namespace sidon4 {

// Set files: one positive integer per line, strictly increasing. Blank
// lines and lines starting with '#' are skipped. Violations throw
// std::runtime_error naming the path and line.
std::vector<std::int64_t> read_set_file(const std::string &path);
void write_set_file(const std::string &path,
                    std::span<const std::int64_t> set);

// Canonical JSON for a report: fixed key order, no timestamps, no
// environment echoes; equal reports serialize to equal bytes. Ends with a
// newline.
std::string serialize_report(const ExperimentReport &report);

void write_text_file(const std::string &path, const std::string &content);

}  // namespace sidon4

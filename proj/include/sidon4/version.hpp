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

namespace sidon4 {

// Version string embedded in reports. Deliberately static (no git hash, no
// build time) so that identical configurations serialize to identical bytes.
inline constexpr const char *kToolVersion = "sidon4 0.1.0";

inline constexpr int kReportSchemaVersion = 1;

}  // namespace sidon4

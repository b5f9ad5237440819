// Copyright 2026 The tfim Authors
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

// Acceptance suite behind `tfim verify`.

#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tfim::tools {

enum class VerifyLevel { fast, full };

VerifyLevel parse_verify_level(const std::string& name);

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::fast;
  /// Test hook: rotates the pair gauge by pi/2 before any gauge-sensitive check.
  bool corrupt_gauge = false;
  int threads = 1;
  /// Only run criteria whose id is listed; empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

using CriterionSink = std::function<void(const CriterionResult&)>;

/// Runs the suite, reporting each result to `sink` as soon as it finishes.
std::vector<CriterionResult> run_verification(const VerifyOptions& options,
                                              const CriterionSink& sink = {});

/// "[PASS] 5 closed-form echo (3.2 s): detail".
std::string format_result(const CriterionResult& r);

}  // namespace tfim::tools

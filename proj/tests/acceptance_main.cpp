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

// Acceptance suite runner: one pass/fail line per criterion.

#include "tfim/tools/acceptance.hpp"

#include <cstring>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  tfim::tools::VerifyOptions opts;
  opts.level = tfim::tools::VerifyLevel::full;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--level") == 0 && i + 1 < argc) {
      opts.level = tfim::tools::parse_verify_level(argv[++i]);
    } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      opts.threads = std::stoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--corrupt-gauge") == 0) {
      opts.corrupt_gauge = true;
    } else {
      std::cerr << "usage: acceptance [--level fast|full] [--threads N] [--corrupt-gauge]\n";
      return 2;
    }
  }
  const auto results = tfim::tools::run_verification(
      opts, [](const auto& r) { std::cout << tfim::tools::format_result(r) << std::endl; });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

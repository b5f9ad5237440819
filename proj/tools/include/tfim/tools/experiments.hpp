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

// Figure presets and custom experiments.

#pragma once

#include "tfim/csv.hpp"
#include "tfim/tools/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tfim::tools {

struct NamedTable {
  std::string name;  // file stem
  CsvTable table;
};

struct ExperimentOutput {
  std::vector<NamedTable> tables;
  /// Extra reference values recorded in the manifest, as a JSON object.
  std::string derived_json = "{}";
};

/// Runs the computation without touching the filesystem.
ExperimentOutput compute_experiment(const ExperimentConfig& config);

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::filesystem::path manifest;
};

/// Validates, computes and writes every table plus manifest.json.
RunResult run_experiment(const ExperimentConfig& config);

/// Table rendered as {"columns": [...], "rows": [[...], ...]}.
std::string table_to_json(const CsvTable& table);

}  // namespace tfim::tools

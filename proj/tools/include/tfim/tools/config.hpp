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

// Experiment configuration: preset defaults, JSON loading and validation.

#pragma once

#include "tfim/hamiltonians.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tfim::tools {

/// Raised for malformed or invalid configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& preset_names();
bool is_known_experiment(const std::string& name);

struct ExperimentConfig {
  std::string experiment;
  int n_sites = 10;
  std::vector<int> n_sites_list;
  double J = 1.0;
  std::vector<double> g_values;
  KappaVector kappa;       // postquench / perturbation
  KappaVector kappa_pre;   // prequench
  std::vector<KappaVector> kappa_panels;
  double delta = 0.1;
  std::vector<double> betas;
  double T = 500.0;
  double t_max = 1.0;
  int t_points = 101;
  std::vector<std::string> ensembles;
  std::string post_quench = "local";
  int pairs = 8;
  int levels = 16;
  std::uint64_t seed = 12345;
  int threads = 1;
  int dense_max_sites = 10;
  std::string out_dir;
  std::string format = "csv";
};

/// Defaults carrying the figure caption parameters of each preset.
ExperimentConfig preset_defaults(const std::string& name);

/// Applies the keys of a JSON object on top of `base`. Unknown keys and type
/// errors raise ConfigError naming the key.
void apply_overrides(ExperimentConfig& config, const std::string& json_text,
                     const std::string& source = "overrides");

/// Parses a config file: "experiment" selects the preset defaults, every
/// other key overrides them. Parse errors report line and column.
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text,
                              const std::string& source = "config");

/// Semantic checks run before any computation.
void validate(const ExperimentConfig& config);

/// The fully resolved config as a JSON object string.
std::string to_json(const ExperimentConfig& config);

/// TFIM_OUT_DIR if set, else "tfim_out".
std::string default_out_dir();

}  // namespace tfim::tools

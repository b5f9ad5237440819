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

// tfim: figure presets, custom runs and the acceptance suite.

#include "tfim/error.hpp"
#include "tfim/tools/acceptance.hpp"
#include "tfim/tools/config.hpp"
#include "tfim/tools/experiments.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>

namespace {

using tfim::tools::ExperimentConfig;

enum ExitCode { kOk = 0, kValidation = 1, kComputation = 2, kVerification = 3 };

struct Overrides {
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> format;
  std::vector<double> g;
  std::vector<int> n_sites;
  std::optional<double> kappa_x, kappa_y, kappa_z;
  std::optional<double> delta;
  std::vector<double> beta;
  std::optional<double> T, t_max;
  std::optional<int> t_points;
  std::vector<std::string> ensembles;
  std::optional<std::string> post_quench;
  std::optional<int> dense_max_sites;
};

void add_override_options(CLI::App* app, Overrides& o) {
  app->add_option("--out", o.out, "Output directory");
  app->add_option("--seed", o.seed, "Random seed");
  app->add_option("--threads", o.threads, "Worker threads");
  app->add_option("--format", o.format, "csv or json");
  app->add_option("--g", o.g, "Field value(s)")->delimiter(',');
  app->add_option("--n-sites", o.n_sites, "Chain length(s)")->delimiter(',');
  app->add_option("--kappa-x", o.kappa_x);
  app->add_option("--kappa-y", o.kappa_y);
  app->add_option("--kappa-z", o.kappa_z);
  app->add_option("--delta", o.delta, "Pulse width");
  app->add_option("--beta", o.beta, "Inverse temperature(s)")->delimiter(',');
  app->add_option("--T", o.T, "Averaging window");
  app->add_option("--t-max", o.t_max);
  app->add_option("--t-points", o.t_points);
  app->add_option("--ensembles", o.ensembles, "random_phase, fixed_parity, canonical")
      ->delimiter(',');
  app->add_option("--post-quench", o.post_quench, "local or exact_d");
  app->add_option("--dense-max-sites", o.dense_max_sites);
}

void apply(const Overrides& o, ExperimentConfig& c) {
  const std::string& e = c.experiment;
  if (o.out) c.out_dir = *o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.format) c.format = *o.format;
  if (!o.g.empty()) c.g_values = o.g;
  if (!o.n_sites.empty()) {
    if (e == "fig2c" || e == "oracle_check") {
      c.n_sites_list = o.n_sites;
    } else {
      if (o.n_sites.size() != 1) throw tfim::tools::ConfigError(e + " takes a single --n-sites");
      c.n_sites = o.n_sites.front();
    }
  }
  if (o.kappa_x) {
    if (e == "fig2a") {
      c.kappa_pre.x = *o.kappa_x;
    } else if (e == "fig1") {
      for (auto& k : c.kappa_panels) {
        if (k.x != 0.0) k.x = *o.kappa_x;
      }
    } else {
      c.kappa.x = *o.kappa_x;
      if (e == "fig2b" || e == "fig2c") c.kappa_pre.x = *o.kappa_x;
    }
  }
  if (o.kappa_y) c.kappa.y = *o.kappa_y;
  if (o.kappa_z) c.kappa.z = *o.kappa_z;
  if (o.delta) c.delta = *o.delta;
  if (!o.beta.empty()) c.betas = o.beta;
  if (o.T) c.T = *o.T;
  if (o.t_max) c.t_max = *o.t_max;
  if (o.t_points) c.t_points = *o.t_points;
  if (!o.ensembles.empty()) c.ensembles = o.ensembles;
  if (o.post_quench) c.post_quench = *o.post_quench;
  if (o.dense_max_sites) c.dense_max_sites = *o.dense_max_sites;
}

int report_error(const char* kind, const std::string& message, int code) {
  const nlohmann::json record = {{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << record.dump() << '\n';
  return code;
}

int run_config(ExperimentConfig config) {
  tfim::tools::validate(config);
  const auto result = tfim::tools::run_experiment(config);
  for (const auto& f : result.files) std::cout << f.string() << '\n';
  std::cout << result.manifest.string() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-mode dynamics of the open transverse-field Ising chain"};
  app.require_subcommand(1);
  Overrides overrides;

  std::vector<std::pair<std::string, CLI::App*>> presets;
  for (const auto& name : tfim::tools::preset_names()) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " preset");
    add_override_options(sub, overrides);
    presets.emplace_back(name, sub);
  }
  auto* thermal = app.add_subcommand("thermal", "Thermal echo experiment");
  add_override_options(thermal, overrides);
  presets.emplace_back("thermal", thermal);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a JSON config file");
  run->add_option("--config", config_path, "Config path")->required();
  add_override_options(run, overrides);

  std::string level = "fast";
  bool corrupt_gauge = false;
  int verify_threads = 1;
  std::vector<int> only;
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  verify->add_flag("--corrupt-gauge", corrupt_gauge, "Test hook: rotate the pair gauge");
  verify->add_option("--threads", verify_threads, "Worker threads");
  verify->add_option("--only", only, "Criterion ids")->delimiter(',');

  if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
    return report_error("validation", std::string("unknown preset '") + argv[1] + "'",
                        kValidation);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what(), kValidation);
  }

  try {
    if (verify->parsed()) {
      tfim::tools::VerifyOptions opts;
      opts.level = tfim::tools::parse_verify_level(level);
      opts.corrupt_gauge = corrupt_gauge;
      opts.threads = std::max(1, verify_threads);
      opts.only = only;
      const auto results = tfim::tools::run_verification(
          opts, [](const auto& r) { std::cout << tfim::tools::format_result(r) << std::endl; });
      std::size_t passed = 0;
      for (const auto& r : results) passed += r.passed ? 1 : 0;
      std::cout << passed << "/" << results.size() << " criteria passed\n";
      return passed == results.size() ? kOk : kVerification;
    }
    ExperimentConfig config;
    if (run->parsed()) {
      config = tfim::tools::load_config(config_path);
    } else {
      for (const auto& [name, sub] : presets) {
        if (sub->parsed()) config = tfim::tools::preset_defaults(name);
      }
    }
    apply(overrides, config);
    return run_config(std::move(config));
  } catch (const tfim::tools::ConfigError& e) {
    return report_error("validation", e.what(), kValidation);
  } catch (const tfim::InvalidArgument& e) {
    return report_error("validation", e.what(), kValidation);
  } catch (const std::exception& e) {
    return report_error("computation", e.what(), kComputation);
  }
}

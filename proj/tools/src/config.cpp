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

#include "tfim/tools/config.hpp"

#include "tfim/csv.hpp"
#include "tfim/pauli.hpp"
#include "tfim/thermal.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tfim::tools {
namespace {

using nlohmann::json;

std::vector<double> arange(double start, double stop, double step) {
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    // Rounded so that grids print without representation noise.
    out.push_back(std::round((start + step * i) * 1e12) / 1e12);
  }
  return out;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  // nlohmann reports the position just past the offending character.
  return {line, column > 1 ? column - 1 : column};
}

class KeyError : public ConfigError {
 public:
  KeyError(const std::string& source, const std::string& key, const std::string& why)
      : ConfigError(source + ": key '" + key + "': " + why), why_(why) {}
  const std::string& why() const { return why_; }

 private:
  std::string why_;
};

[[noreturn]] void fail_key(const std::string& source, const std::string& key,
                           const std::string& why) {
  throw KeyError(source, key, why);
}

/// Position of `"key":` in the raw text, if present.
std::optional<std::pair<std::size_t, std::size_t>> locate_key(const std::string& text,
                                                              const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  for (auto pos = text.find(quoted); pos != std::string::npos;
       pos = text.find(quoted, pos + 1)) {
    auto after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') return line_column(text, pos + 1);
  }
  return std::nullopt;
}

std::string located(const std::string& source, const std::string& text,
                    const std::string& key) {
  if (const auto at = locate_key(text, key)) {
    return source + ":" + std::to_string(at->first) + ":" + std::to_string(at->second);
  }
  return source;
}

double number(const json& v, const std::string& source, const std::string& key) {
  if (!v.is_number()) fail_key(source, key, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& source, const std::string& key) {
  if (!v.is_number_integer()) fail_key(source, key, "expected an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& source,
                                const std::string& key) {
  if (v.is_number()) return {v.get<double>()};
  if (v.is_object()) {
    for (const auto& item : v.items()) {
      if (item.key() != "start" && item.key() != "stop" && item.key() != "step") {
        fail_key(source, key, "unknown range field '" + item.key() + "'");
      }
    }
    if (!v.contains("start") || !v.contains("stop") || !v.contains("step")) {
      fail_key(source, key, "a range needs start, stop and step");
    }
    const double start = number(v["start"], source, key + ".start");
    const double stop = number(v["stop"], source, key + ".stop");
    const double step = number(v["step"], source, key + ".step");
    if (!(step > 0.0) || stop < start) fail_key(source, key, "empty or invalid range");
    return arange(start, stop, step);
  }
  if (!v.is_array() || v.empty()) fail_key(source, key, "expected a number, list or range");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, source, key));
  return out;
}

KappaVector kappa_value(const json& v, const std::string& source,
                        const std::string& key) {
  KappaVector k;
  if (v.is_array()) {
    if (v.size() != 3) fail_key(source, key, "expected [x, y, z]");
    k.x = number(v[0], source, key);
    k.y = number(v[1], source, key);
    k.z = number(v[2], source, key);
    return k;
  }
  if (!v.is_object()) fail_key(source, key, "expected {x, y, z} or [x, y, z]");
  for (const auto& item : v.items()) {
    const double val = number(item.value(), source, key + "." + item.key());
    if (item.key() == "x") k.x = val;
    else if (item.key() == "y") k.y = val;
    else if (item.key() == "z") k.z = val;
    else fail_key(source, key, "unknown component '" + item.key() + "'");
  }
  return k;
}

json kappa_json(const KappaVector& k) { return json{{"x", k.x}, {"y", k.y}, {"z", k.z}}; }

void check_sites(int n, const std::string& what) {
  if (n < 2) throw ConfigError(what + " must be at least 2, got " + std::to_string(n));
  if (n > kDefaultDenseCap) {
    throw ConfigError(what + " = " + std::to_string(n) +
                      " exceeds the dense size cap of " +
                      std::to_string(kDefaultDenseCap) + " sites");
  }
}

json parse_json(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte);
    std::string what = e.what();
    if (const auto pos = what.find("syntax error"); pos != std::string::npos) {
      what = what.substr(pos);
    }
    throw ConfigError(source + ":" + std::to_string(line) + ":" +
                      std::to_string(column) + ": " + what);
  }
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig1", "fig2a", "fig2b", "fig2c", "fig3a",
      "fig3b", "fig_temp", "oracle_check", "gates"};
  return names;
}

bool is_known_experiment(const std::string& name) {
  const auto& p = preset_names();
  return name == "thermal" || std::find(p.begin(), p.end(), name) != p.end();
}

ExperimentConfig preset_defaults(const std::string& name) {
  if (!is_known_experiment(name)) {
    throw ConfigError("unknown experiment '" + name + "'");
  }
  ExperimentConfig c;
  c.experiment = name;
  c.out_dir = (std::filesystem::path(default_out_dir()) / name).string();
  if (name == "fig1") {
    c.n_sites = 10;
    c.g_values = arange(0.05, 2.0, 0.05);
    c.kappa_panels = {{0, 0, 0}, {0.1, 0, 0}, {0, 0.1, 0}, {0, 0, -0.1}};
    c.pairs = 8;
  } else if (name == "fig2a") {
    c.n_sites = 12;
    c.g_values = {0.5, 1.5};
    c.kappa_pre = {0.05, 0, 0};
    c.delta = 0.1;
    c.t_max = 1.0;
    c.t_points = 201;
  } else if (name == "fig2b") {
    c.n_sites = 12;
    c.g_values = {0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.5};
    c.kappa_pre = {0.05, 0, 0};
    c.kappa = {0.05, 0.1, 0};
    c.t_max = 150.0;
    c.t_points = 1001;
  } else if (name == "fig2c") {
    c.n_sites_list = {8, 10, 12};
    c.g_values = arange(0.1, 2.0, 0.1);
    c.kappa_pre = {0.05, 0, 0};
    c.kappa = {0.05, 0.1, 0};
    c.T = 500.0;
    c.t_points = 0;  // chosen from the period/50 step guard
  } else if (name == "fig3a" || name == "thermal") {
    c.n_sites = 10;
    c.g_values = {0.4};
    c.kappa = {0.1, 0, 0};
    c.betas = {1.0};
    c.ensembles = {"random_phase", "fixed_parity", "canonical"};
    c.t_max = 60.0;
    c.t_points = 41;
  } else if (name == "fig3b") {
    c.n_sites = 10;
    c.g_values = {0.4, 0.8, 1.2, 1.5};
    c.kappa = {0.1, 0, 0};
    c.betas = {1.0};
    c.ensembles = {"canonical"};
    c.t_max = 60.0;
    c.t_points = 41;
  } else if (name == "fig_temp") {
    c.n_sites = 10;
    c.g_values = {0.4};
    c.kappa = {0.1, 0, 0};
    c.betas = {0.5, 1.0, 2.0};
    c.ensembles = {"random_phase", "fixed_parity", "canonical"};
    c.t_max = 60.0;
    c.t_points = 41;
  } else if (name == "oracle_check") {
    c.n_sites_list = {6, 8, 10};
    c.g_values = {0.2, 0.5, 0.8, 1.0, 1.2, 1.5};
    c.levels = 16;
  } else if (name == "gates") {
    c.n_sites = 12;
    c.g_values = {0.5};
    c.kappa = {0.05, 0, 0.05};
    c.t_max = std::numbers::pi / (4.0 * 0.05);
  }
  return c;
}

namespace {

void apply_key(ExperimentConfig& c, const std::string& key, const json& v,
               const std::string& source) {
  if (key == "experiment") {
    if (!v.is_string()) fail_key(source, key, "expected a string");
    if (v.get<std::string>() != c.experiment) {
      fail_key(source, key, "cannot change the experiment of a resolved config");
    }
  } else if (key == "n_sites") {
    c.n_sites = integer(v, source, key);
  } else if (key == "n_sites_list") {
    if (!v.is_array()) fail_key(source, key, "expected a list of integers");
    c.n_sites_list.clear();
    for (const auto& x : v) c.n_sites_list.push_back(integer(x, source, key));
  } else if (key == "J") {
    c.J = number(v, source, key);
  } else if (key == "g" || key == "g_grid") {
    c.g_values = number_list(v, source, key);
  } else if (key == "kappa") {
    c.kappa = kappa_value(v, source, key);
  } else if (key == "kappa_pre") {
    c.kappa_pre = kappa_value(v, source, key);
  } else if (key == "kappa_panels") {
    if (!v.is_array()) fail_key(source, key, "expected a list of kappa vectors");
    c.kappa_panels.clear();
    for (const auto& x : v) c.kappa_panels.push_back(kappa_value(x, source, key));
  } else if (key == "delta") {
    c.delta = number(v, source, key);
  } else if (key == "beta" || key == "betas") {
    c.betas = number_list(v, source, key);
  } else if (key == "T") {
    c.T = number(v, source, key);
  } else if (key == "t_max") {
    c.t_max = number(v, source, key);
  } else if (key == "t_points") {
    c.t_points = integer(v, source, key);
  } else if (key == "ensembles" || key == "ensemble") {
    c.ensembles.clear();
    if (v.is_string()) {
      c.ensembles.push_back(v.get<std::string>());
    } else if (v.is_array() && !v.empty()) {
      for (const auto& x : v) {
        if (!x.is_string()) fail_key(source, key, "expected ensemble names");
        c.ensembles.push_back(x.get<std::string>());
      }
    } else {
      fail_key(source, key, "expected a name or a list of names");
    }
  } else if (key == "post_quench") {
    if (!v.is_string()) fail_key(source, key, "expected a string");
    c.post_quench = v.get<std::string>();
  } else if (key == "pairs") {
    c.pairs = integer(v, source, key);
  } else if (key == "levels") {
    c.levels = integer(v, source, key);
  } else if (key == "seed") {
    if (!v.is_number_unsigned()) fail_key(source, key, "expected a nonnegative integer");
    c.seed = v.get<std::uint64_t>();
  } else if (key == "threads") {
    c.threads = integer(v, source, key);
  } else if (key == "dense_max_sites") {
    c.dense_max_sites = integer(v, source, key);
  } else if (key == "out_dir") {
    if (!v.is_string()) fail_key(source, key, "expected a string");
    c.out_dir = v.get<std::string>();
  } else if (key == "format") {
    if (!v.is_string()) fail_key(source, key, "expected a string");
    c.format = v.get<std::string>();
  } else {
    fail_key(source, key, "unknown key");
  }
}

}  // namespace

void apply_overrides(ExperimentConfig& c, const std::string& json_text,
                     const std::string& source) {
  const json doc = parse_json(json_text, source);
  if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");
  for (const auto& item : doc.items()) {
    try {
      apply_key(c, item.key(), item.value(), source);
    } catch (const KeyError& e) {
      throw ConfigError(located(source, json_text, item.key()) + ": key '" + item.key() +
                        "': " + e.why());
    }
  }
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  const json doc = parse_json(text, source);
  if (!doc.is_object()) throw ConfigError(source + ": top level must be an object");
  if (!doc.contains("experiment") || !doc["experiment"].is_string()) {
    throw ConfigError(source + ": missing string key 'experiment'");
  }
  const std::string name = doc["experiment"].get<std::string>();
  if (!is_known_experiment(name)) {
    throw ConfigError(located(source, text, "experiment") + ": unknown experiment '" + name +
                      "'");
  }
  ExperimentConfig c = preset_defaults(name);
  apply_overrides(c, text, source);
  try {
    validate(c);
  } catch (const ConfigError& e) {
    // Validation messages open with the offending key.
    const std::string what = e.what();
    const std::string key = what.substr(0, what.find_first_of(" ,:"));
    if (doc.contains(key)) throw ConfigError(located(source, text, key) + ": " + what);
    throw ConfigError(source + ": " + what);
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str(), path.string());
}

void validate(const ExperimentConfig& c) {
  const std::string& e = c.experiment;
  if (!is_known_experiment(e)) throw ConfigError("unknown experiment '" + e + "'");
  const bool uses_list = e == "fig2c" || e == "oracle_check";
  if (uses_list) {
    if (c.n_sites_list.empty()) throw ConfigError("n_sites_list must not be empty");
    for (int n : c.n_sites_list) check_sites(n, "n_sites");
  } else {
    check_sites(c.n_sites, "n_sites");
  }
  if (!std::isfinite(c.J) || c.J <= 0.0) throw ConfigError("J must be positive");
  if (c.g_values.empty()) throw ConfigError("at least one g value is required");
  for (double g : c.g_values) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw ConfigError("g values must be positive and finite");
    }
    if (e == "fig1" && g > 2.0) throw ConfigError("fig1 g values must lie in (0, 2]");
  }
  if (c.threads < 1) throw ConfigError("threads must be at least 1");
  if (c.dense_max_sites < 1 || c.dense_max_sites > kDefaultDenseCap) {
    throw ConfigError("dense_max_sites must lie in [1, " +
                      std::to_string(kDefaultDenseCap) + "]");
  }
  if (c.format != "csv" && c.format != "json") {
    throw ConfigError("format must be 'csv' or 'json'");
  }
  if (c.out_dir.empty()) throw ConfigError("out_dir must not be empty");
  if (!(c.t_max > 0.0) || !std::isfinite(c.t_max)) throw ConfigError("t_max must be positive");
  if (c.t_points < 2 && !(e == "fig2c" && c.t_points == 0)) {
    throw ConfigError("t_points must be at least 2");
  }
  if (e == "fig1") {
    if (c.kappa_panels.empty()) throw ConfigError("fig1 needs kappa_panels");
    if (c.pairs < 1) throw ConfigError("pairs must be at least 1");
  }
  if (e == "fig2a" && !(c.delta > 0.0)) throw ConfigError("delta must be positive");
  if (e == "fig2b" || e == "fig2c") {
    if (c.kappa.x == 0.0 && c.kappa.y == 0.0) {
      throw ConfigError("postquench kappa_x and kappa_y cannot both vanish");
    }
  }
  if (e == "fig2c" && !(c.T > 0.0)) throw ConfigError("T must be positive");
  if (e == "oracle_check" && c.levels < 1) throw ConfigError("levels must be at least 1");
  if (e == "oracle_check") {
    for (int n : c.n_sites_list) {
      if (c.levels > (1 << n)) throw ConfigError("levels exceeds 2^N");
    }
  }
  if (e == "gates") {
    for (double g : c.g_values) {
      if (g >= 1.0) throw ConfigError("gates need the ordered phase (g < 1)");
    }
    if (c.kappa.x == 0.0 || c.kappa.z == 0.0) {
      throw ConfigError("gates need nonzero kappa.x (Hadamard) and kappa.z (phase)");
    }
  }
  const bool thermal = e == "fig3a" || e == "fig3b" || e == "fig_temp" || e == "thermal";
  if (thermal) {
    if (c.ensembles.empty()) throw ConfigError("at least one ensemble is required");
    if (c.betas.empty()) throw ConfigError("at least one beta is required");
    for (double b : c.betas) {
      if (!(b >= 0.0) || !std::isfinite(b)) throw ConfigError("beta must be nonnegative");
    }
    PostQuench post{};
    try {
      post = parse_post_quench(c.post_quench);
    } catch (const std::exception& ex) {
      throw ConfigError(ex.what());
    }
    for (const auto& name : c.ensembles) {
      EnsembleKind kind{};
      try {
        kind = parse_ensemble_kind(name);
      } catch (const std::exception& ex) {
        throw ConfigError(ex.what());
      }
      for (double g : c.g_values) {
        if (kind != EnsembleKind::canonical && g >= 1.0) {
          throw ConfigError(
              "ensemble '" + name + "' at g = " + format_number(g) +
              ": the definition of the thermal state in case (i) and (ii) is "
              "absent in the disordered phase");
        }
        if (post == PostQuench::exact_d && g >= 1.0) {
          throw ConfigError("post_quench 'exact_d' needs the ordered phase (g < 1)");
        }
      }
    }
  }
}

std::string to_json(const ExperimentConfig& c) {
  json panels = json::array();
  for (const auto& k : c.kappa_panels) panels.push_back(kappa_json(k));
  const json doc = {{"experiment", c.experiment},
                    {"n_sites", c.n_sites},
                    {"n_sites_list", c.n_sites_list},
                    {"J", c.J},
                    {"g", c.g_values},
                    {"kappa", kappa_json(c.kappa)},
                    {"kappa_pre", kappa_json(c.kappa_pre)},
                    {"kappa_panels", panels},
                    {"delta", c.delta},
                    {"betas", c.betas},
                    {"T", c.T},
                    {"t_max", c.t_max},
                    {"t_points", c.t_points},
                    {"ensembles", c.ensembles},
                    {"post_quench", c.post_quench},
                    {"pairs", c.pairs},
                    {"levels", c.levels},
                    {"seed", c.seed},
                    {"threads", c.threads},
                    {"dense_max_sites", c.dense_max_sites},
                    {"out_dir", c.out_dir},
                    {"format", c.format}};
  return doc.dump(2);
}

std::string default_out_dir() {
  if (const char* env = std::getenv("TFIM_OUT_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return "tfim_out";
}

}  // namespace tfim::tools

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

// Drives the tfim executable end to end.

#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Catch::Matchers::ContainsSubstring;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tfim_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run tfim(const std::string& args) {
  static int counter = 0;
  const fs::path base = fs::temp_directory_path() / "tfim_cli_tests";
  fs::create_directories(base);
  const fs::path out = base / ("stdout_" + std::to_string(counter));
  const fs::path err = base / ("stderr_" + std::to_string(counter++));
  const std::string cmd = std::string("\"") + TFIM_CLI_PATH + "\" " + args + " >\"" +
                          out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

}  // namespace

TEST_CASE("help exits cleanly") {
  const Run r = tfim("--help");
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("verify"));
}

TEST_CASE("unknown presets are validation errors with a JSON record") {
  const Run r = tfim("fig9");
  CHECK(r.code == 1);
  const auto rec = nlohmann::json::parse(r.err);
  CHECK(rec["error"] == "validation");
  CHECK(rec["exit_code"] == 1);
  CHECK_THAT(rec["message"].get<std::string>(), ContainsSubstring("fig9"));
  CHECK(tfim("fig2b --n-sites abc").code == 1);
}

TEST_CASE("oversized chains are rejected before computing") {
  const fs::path dir = scratch("n16");
  const Run r = tfim("run --config " + write_config(dir, R"({"experiment": "fig2b", "n_sites": 16})"));
  CHECK(r.code == 1);
  CHECK_THAT(r.err, ContainsSubstring("exceeds the dense size cap of 14 sites"));
  CHECK(tfim("fig2b --n-sites 16").code == 1);
}

TEST_CASE("structured thermal runs in the disordered phase are rejected") {
  const Run r = tfim("thermal --g 1.2 --ensembles random_phase --out " + scratch("t12").string());
  CHECK(r.code == 1);
  CHECK_THAT(r.err, ContainsSubstring("absent in the disordered phase"));
}

TEST_CASE("config errors point at the line") {
  const fs::path dir = scratch("syntax");
  const Run r = tfim("run --config " +
                     write_config(dir, "{\n  \"experiment\": \"fig2b\",\n  \"t_max\": 1,,\n}\n"));
  CHECK(r.code == 1);
  CHECK_THAT(r.err, ContainsSubstring("config.json:3:"));
}

TEST_CASE("unwritable output is a computation failure") {
  const fs::path dir = scratch("blocked");
  std::ofstream(dir / "file") << "x";
  const Run r = tfim("oracle_check --n-sites 4 --g 0.5 --out " + (dir / "file" / "sub").string());
  CHECK(r.code == 2);
  CHECK(nlohmann::json::parse(r.err)["error"] == "computation");
}

TEST_CASE("same seed, byte-identical CSV") {
  const std::string args = "thermal --n-sites 6 --ensembles random_phase,fixed_parity "
                           "--t-points 5 --seed 7 --out ";
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(tfim(args + a.string()).code == 0);
  REQUIRE(tfim(args + b.string() + " --threads 2").code == 0);
  CHECK(slurp(a / "thermal.csv") == slurp(b / "thermal.csv"));
  const fs::path c = scratch("det_c");
  REQUIRE(tfim("thermal --n-sites 6 --ensembles random_phase --t-points 5 --seed 8 --out " +
               c.string())
              .code == 0);
  CHECK(slurp(a / "thermal.csv") != slurp(c / "thermal.csv"));
}

TEST_CASE("a minimal config reproduces the preset") {
  const std::string flags = " --n-sites 6 --g 0.4,1.2 --t-points 11";
  const fs::path a = scratch("preset");
  const fs::path b = scratch("config");
  REQUIRE(tfim("fig2b" + flags + " --out " + a.string()).code == 0);
  const std::string cfg = write_config(b, R"({"experiment": "fig2b"})");
  REQUIRE(tfim("run --config " + cfg + flags + " --out " + b.string()).code == 0);
  CHECK(slurp(a / "fig2b.csv") == slurp(b / "fig2b.csv"));
  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["config"]["n_sites"] == 6);
  CHECK(manifest["config"]["kappa"]["y"] == 0.1);
}

TEST_CASE("fig1 writes one file per panel") {
  const fs::path dir = scratch("fig1");
  const Run r = tfim("fig1 --n-sites 4 --g 0.5,1.5 --out " + dir.string());
  REQUIRE(r.code == 0);
  for (const char* f : {"fig1a.csv", "fig1b.csv", "fig1c.csv", "fig1d.csv", "manifest.json"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK(slurp(dir / "fig1a.csv").starts_with("g,n,epsilon_n,split_n,parity_resolved\n"));
}

TEST_CASE("JSON output format") {
  const fs::path dir = scratch("json");
  REQUIRE(tfim("oracle_check --n-sites 4 --g 0.5 --format json --out " + dir.string()).code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "oracle_levels.json"));
  CHECK(doc["columns"][0] == "n_sites");
  CHECK_FALSE(doc["rows"].empty());
}

TEST_CASE("output directory defaults from the environment") {
  const fs::path dir = scratch("env");
  const std::string cmd = "TFIM_OUT_DIR=" + dir.string() + " ";
  const int status = std::system((cmd + "\"" + TFIM_CLI_PATH +
                                  "\" oracle_check --n-sites 4 --g 0.5 >/dev/null")
                                     .c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(dir / "oracle_check" / "oracle_levels.csv"));
}

TEST_CASE("verify reports and exit codes") {
  const Run ok = tfim("verify --level fast --only 1,2");
  CHECK(ok.code == 0);
  CHECK_THAT(ok.out, ContainsSubstring("[PASS] 1 operator algebra"));
  CHECK_THAT(ok.out, ContainsSubstring("2/2 criteria passed"));
  const Run bad = tfim("verify --level fast --only 4 --corrupt-gauge");
  CHECK(bad.code == 3);
  CHECK_THAT(bad.out, ContainsSubstring("[FAIL] 4 pseudospin block"));
}

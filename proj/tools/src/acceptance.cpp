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

#include "tfim/tools/acceptance.hpp"

#include "tfim/dynamics.hpp"
#include "tfim/linalg.hpp"
#include "tfim/error.hpp"
#include "tfim/oracle.hpp"
#include "tfim/parallel.hpp"
#include "tfim/spectral.hpp"
#include "tfim/thermal.hpp"
#include "tfim/tools/config.hpp"
#include "tfim/tools/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>

namespace tfim::tools {
namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

class Detail {
 public:
  Detail() { out_.precision(4); }
  template <class T>
  Detail& operator<<(const T& v) {
    out_ << v;
    return *this;
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

bool full(const VerifyOptions& o) { return o.level == VerifyLevel::full; }

double gauge_offset(const VerifyOptions& o) {
  return o.corrupt_gauge ? std::numbers::pi / 2.0 : 0.0;
}

Outcome operator_algebra(const VerifyOptions& o) {
  const std::vector<int> sizes = full(o) ? std::vector<int>{6, 8, 10} : std::vector<int>{6, 8};
  double worst_anti = 0.0;
  double worst_square = 0.0;
  for (int n : sizes) {
    for (double g : {0.2, 0.5, 0.8}) {
      const OperatorSum d = build_d({n, 1.0, g});
      OperatorSum identity(n);
      identity.add(1.0, PauliString::identity(n));
      worst_anti = std::max(worst_anti,
                            anticommutator(d, d.adjoint()).max_coefficient_distance(identity));
      worst_square = std::max(worst_square, (d * d).max_coefficient_distance(OperatorSum(n)));
    }
  }
  return {worst_anti <= 1e-10 && worst_square <= 1e-10,
          (Detail() << "max |{D,D^dag} - I| = " << worst_anti << ", max |D^2| = " << worst_square)
              .str()};
}

Outcome oracle_equivalence(const VerifyOptions& o) {
  const std::vector<int> sizes = full(o) ? std::vector<int>{6, 8, 10} : std::vector<int>{6, 8};
  const std::vector<double> gs{0.2, 0.5, 0.8, 1.0, 1.2, 1.5};
  std::vector<double> worst(sizes.size() * gs.size(), 0.0);
  parallel_for(worst.size(), o.threads, [&](std::size_t i) {
    const ModelParams params{sizes[i / gs.size()], 1.0, gs[i % gs.size()]};
    SectorOptions opts;
    opts.vectors = false;
    const RVector ed = sector_diagonalize(build_h0(params), opts).eigenvalues;
    const RVector fermion =
        many_body_spectrum(bdg_solve(params), static_cast<std::size_t>(ed.size()));
    worst[i] = (ed - fermion).cwiseAbs().maxCoeff();
  });
  const double m = *std::max_element(worst.begin(), worst.end());
  return {m <= 1e-9, (Detail() << "max level difference " << m << " over "
                               << worst.size() << " (N, g) cells, full spectra")
                         .str()};
}

double ground_pair_gap(int n, double g) {
  SectorOptions opts;
  opts.vectors = false;
  opts.degeneracy_tolerance = degeneracy_tolerance({n, 1.0, g});
  return sector_diagonalize(build_h0({n, 1.0, g}), opts).pair(1).gap;
}

Outcome degeneracy_structure(const VerifyOptions& o) {
  const double g = 0.5;
  const int n = full(o) ? 12 : 8;
  SectorOptions opts;
  opts.vectors = false;
  opts.degeneracy_tolerance = degeneracy_tolerance({n, 1.0, g});
  const SpectrumResult spec = sector_diagonalize(build_h0({n, 1.0, g}), opts);
  const double bound = 10.0 * std::pow(g, n);
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k) worst = std::max(worst, spec.pair(k).gap);

  const std::vector<int> sizes = full(o) ? std::vector<int>{6, 8, 10, 12} : std::vector<int>{4, 6, 8};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int m : sizes) {
    const double y = std::log(ground_pair_gap(m, g));
    sx += m;
    sy += y;
    sxx += double(m) * m;
    sxy += m * y;
  }
  const double k = static_cast<double>(sizes.size());
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  const double rel = std::abs(slope / std::log(g) - 1.0);
  return {worst < bound && rel <= 0.3,
          (Detail() << "N=" << n << " worst pair gap " << worst << " (bound " << bound
                    << "), log-gap slope " << slope << " vs log g " << std::log(g))
              .str()};
}

Outcome level_splitting(const VerifyOptions& o) {
  if (!full(o)) {
    // Reduced check: the exact edge perturbation must reproduce B in the
    // gauged ground pair.
    const ModelParams params{8, 1.0, 0.4};
    SectorOptions opts;
    opts.vectors_per_sector = 2;
    opts.degeneracy_tolerance = degeneracy_tolerance(params);
    const SpectrumResult spec = sector_diagonalize(build_h0(params), opts);
    GaugeOptions gauge;
    gauge.reference = edge_reference(params);
    gauge.phase_offset = gauge_offset(o);
    const KappaVector kappa{0.1, 0.2, 0.3};
    const PseudospinBlock block =
        pseudospin_block(spec, 1, build_h_prime(params, kappa), gauge);
    const double err = std::max({std::abs(block.B.x - kappa.x), std::abs(block.B.y - kappa.y),
                                 std::abs(block.B.z - kappa.z)});
    return {block.gauged && err <= 1e-3,
            (Detail() << "pseudospin block B = (" << block.B.x << ", " << block.B.y << ", "
                      << block.B.z << ") for kappa (0.1, 0.2, 0.3), max error " << err)
                .str()};
  }
  const std::vector<double> gs{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const auto rows = level_split_scan(gs, {0.1, 0.0, 0.0}, 10, 4, 1.0, o.threads);
  double worst = 0.0;
  double worst_g = 0.0;
  double worst_split = 0.0;
  int failures = 0;
  for (const auto& r : rows) {
    const double rel = std::abs(r.split_n / 0.2 - 1.0);
    if (rel > 0.1) ++failures;
    if (rel > worst) {
      worst = rel;
      worst_g = r.g;
      worst_split = r.split_n;
    }
  }
  return {failures == 0,
          (Detail() << failures << " of " << rows.size() << " pair splits outside 0.2 +- 10%; worst "
                    << worst_split << " at g=" << worst_g)
              .str()};
}

Outcome closed_form_echo(const VerifyOptions& o) {
  const int n = full(o) ? 12 : 8;
  const ModelParams params{n, 1.0, 0.4};
  const OperatorSum h0 = build_h0(params);
  const OperatorSum h_pre = h0 + build_h_prime(params, {0.05, 0.0, 0.0});
  const OperatorSum h_pos = h0 + build_h_prime(params, {0.05, 0.1, 0.0});
  const SpectrumResult ground = lowest_states(h_pre, 1);
  const double tau = le_period(0.05, 0.1);
  const auto times = uniform_grid(0.0, 3.0 * tau, full(o) ? 1000 : 300);
  const EchoSeries echo = loschmidt_echo(ground.state(0).normalized(), h_pre, h_pos, times);
  double dev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    dev = std::max(dev, std::abs(echo.values[i] - le_closed_form(0.05, 0.1, times[i])));
  }
  const double minimum = series_minimum(echo);
  const double period = fit_period(echo);
  return {dev <= 0.02 && std::abs(minimum - 0.2) <= 0.02 && std::abs(period - 28.1) <= 0.6,
          (Detail() << "N=" << n << " max deviation " << dev << ", minimum " << minimum
                    << ", period " << period)
              .str()};
}

Outcome excited_universality(const VerifyOptions& o) {
  const int n = full(o) ? 12 : 8;
  const ModelParams params{n, 1.0, 0.4};
  const OperatorSum h0 = build_h0(params);
  SectorOptions opts;
  opts.vectors_per_sector = 3;
  opts.degeneracy_tolerance = degeneracy_tolerance(params);
  const SpectrumResult spec = sector_diagonalize(h0, opts);
  GaugeOptions gauge;
  gauge.reference = edge_reference(params);
  gauge.phase_offset = gauge_offset(o);
  const OperatorSum pre = build_h_prime(params, {0.05, 0.0, 0.0});
  const OperatorSum h_pre = h0 + pre;
  const OperatorSum h_pos = h0 + build_h_prime(params, {0.05, 0.1, 0.0});
  const auto times = uniform_grid(0.0, 3.0 * le_period(0.05, 0.1), 400);
  double periods[2];
  const int pair_ids[2] = {1, 3};
  for (int k = 0; k < 2; ++k) {
    const StateVector psi = pair_ground_state(spec, pair_ids[k], pre, gauge);
    periods[k] = fit_period(loschmidt_echo(psi, h_pre, h_pos, times));
  }
  const double rel = std::abs(periods[1] / periods[0] - 1.0);
  return {rel <= 0.03, (Detail() << "N=" << n << " period pair 1 " << periods[0] << ", pair 3 "
                                 << periods[1] << ", relative difference " << rel)
                           .str()};
}

Outcome pulse_action(const VerifyOptions& o) {
  const int n = full(o) ? 12 : 8;
  const double delta = 0.1;
  double l[2];
  const double gs[2] = {0.5, 1.5};
  parallel_for(2, o.threads, [&](std::size_t i) {
    l[i] = pulse_string_check({n, 1.0, gs[i]}, 0.05, delta, {delta}).values.front();
  });
  return {l[0] < 0.05 && l[1] > 0.95,
          (Detail() << "N=" << n << " L(delta) = " << l[0] << " at g=0.5, " << l[1] << " at g=1.5")
              .str()};
}

Outcome phase_diagram(const VerifyOptions& o) {
  const int n = full(o) ? 12 : 8;
  const std::vector<double> gs = full(o)
                                     ? std::vector<double>{0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6}
                                     : std::vector<double>{0.2, 0.6, 1.0, 1.4, 1.6};
  ExperimentConfig c = preset_defaults("fig2c");
  c.n_sites_list = {n};
  c.g_values = gs;
  c.threads = o.threads;
  c.out_dir = ".";
  const auto output = compute_experiment(c);
  const CsvTable& table = output.tables.front().table;
  std::vector<double> avg;
  for (std::size_t i = 0; i < table.rows(); ++i) avg.push_back(std::get<double>(table.row(i)[2]));
  bool ok = true;
  bool monotone = true;
  Detail d;
  d << "N=" << n << " average LE:";
  for (std::size_t i = 0; i < gs.size(); ++i) {
    d << " g=" << gs[i] << ":" << avg[i];
    if (gs[i] <= 0.6 + 1e-12 && std::abs(avg[i] - 0.6) > 0.05) ok = false;
    if (gs[i] >= 1.4 - 1e-12 && avg[i] < 0.95) ok = false;
    if (i > 0 && avg[i] < avg[i - 1] - 1e-3) monotone = false;
  }
  if (!monotone) d << " (not monotone)";
  return {ok && monotone, d.str()};
}

Outcome gates(const VerifyOptions& o) {
  const int n = full(o) ? 12 : 8;
  // At N = 8 the g = 0.5 pair gap already costs 1e-3 of phase fidelity.
  const ModelParams params{n, 1.0, full(o) ? 0.5 : 0.4};
  GaugeOptions gauge;
  gauge.phase_offset = gauge_offset(o);
  const double k = 0.05;
  const double t_h = std::numbers::pi / (2.0 * std::sqrt(2.0) * k);
  const double t_p = std::numbers::pi / (4.0 * k);
  GateResult r[2];
  parallel_for(2, o.threads, [&](std::size_t i) {
    r[i] = i == 0 ? gate_fidelity(hadamard_gate(), params, {k, 0.0, k}, 1, t_h, {}, gauge)
                  : gate_fidelity(phase_gate(2.0 * k * t_p), params, {0.0, 0.0, k}, 1, t_p, {},
                                  gauge);
  });
  return {r[0].fidelity >= 0.99 && r[1].fidelity >= 0.999,
          (Detail() << "N=" << n << " g=" << params.g << " Hadamard fidelity " << r[0].fidelity << " (leakage "
                    << r[0].leakage << "), phase fidelity " << r[1].fidelity << " (leakage "
                    << r[1].leakage << ")")
              .str()};
}

Outcome thermal_cases(const VerifyOptions& o) {
  const int n = full(o) ? 10 : 8;
  const double kx = 0.1;
  const double span = 1.2 * std::numbers::pi / kx;
  const auto times = uniform_grid(0.0, span, 41);
  const auto structured =
      thermal_experiment({EnsembleKind::random_phase, EnsembleKind::fixed_parity}, {1.0}, {0.4},
                         n, 1.0, kx, PostQuench::local, times, kDefaultSeed, o.threads);
  const auto canonical =
      thermal_experiment({EnsembleKind::canonical}, {1.0}, {0.4, 1.5}, n, 1.0, kx,
                         PostQuench::local, uniform_grid(0.0, span, 9), kDefaultSeed, o.threads);
  auto min_of = [](const EchoSeries& s) {
    return *std::min_element(s.values.begin(), s.values.end());
  };
  const double case_i = min_of(structured[0].series);
  const double case_ii = min_of(structured[1].series);
  const double canon = std::min(min_of(canonical[0].series), min_of(canonical[1].series));
  return {std::abs(case_i - 0.25) <= 0.1 && case_ii <= 0.05 && canon >= 0.95,
          (Detail() << "N=" << n << " minima: case (i) " << case_i << ", case (ii) " << case_ii
                    << ", canonical " << canon)
              .str()};
}

Outcome null_results(const VerifyOptions& o) {
  const int n = full(o) ? 10 : 8;
  const ModelParams params{n, 1.0, 0.4};
  const double base_gap = ground_pair_gap(n, 0.4);
  double worst_split = 0.0;
  for (double gamma : {-0.1, -0.05, 0.05, 0.1}) {
    std::vector<double> field(static_cast<std::size_t>(n), 0.0);
    field.back() = gamma;
    const RVector e = linalg::hermitian_eigenvalues(to_dense(build_y_perturbed(params, field)));
    worst_split = std::max(worst_split, e[1] - e[0]);
  }
  double worst_iso = 0.0;
  std::vector<double> profile(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) profile[static_cast<std::size_t>(j)] = 0.1 * std::sin(1.3 * j + 0.4);
  for (const auto& field : {profile, std::vector<double>(static_cast<std::size_t>(n), 0.07)}) {
    const RVector a = linalg::hermitian_eigenvalues(to_dense(build_y_perturbed(params, field)));
    const RVector b = linalg::hermitian_eigenvalues(to_dense(tau_equivalent_h0(params, field)));
    worst_iso = std::max(worst_iso, (a - b).cwiseAbs().maxCoeff());
  }
  return {worst_split < 10.0 * base_gap && worst_iso <= 1e-10,
          (Detail() << "N=" << n << " ground splitting " << worst_split << " vs 10 x gap "
                    << 10.0 * base_gap << ", isospectral defect " << worst_iso)
              .str()};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome determinism(const VerifyOptions& o) {
  const auto root = std::filesystem::temp_directory_path() /
                    ("tfim_verify_" + std::to_string(std::chrono::steady_clock::now()
                                                         .time_since_epoch()
                                                         .count()));
  std::vector<ExperimentConfig> configs;
  {
    auto c = preset_defaults("fig1");
    c.n_sites = 6;
    c.g_values = {0.3, 0.9, 1.5};
    c.pairs = 4;
    configs.push_back(c);
  }
  {
    auto c = preset_defaults("fig2a");
    c.n_sites = 6;
    c.t_points = 21;
    configs.push_back(c);
  }
  {
    auto c = preset_defaults("oracle_check");
    c.n_sites_list = {6};
    configs.push_back(c);
  }
  {
    auto c = preset_defaults("thermal");
    c.n_sites = 6;
    c.ensembles = {"random_phase", "fixed_parity"};
    c.t_points = 9;
    configs.push_back(c);
  }
  if (full(o)) {
    auto c = preset_defaults("fig2b");
    c.n_sites = 8;
    c.g_values = {0.4, 1.2};
    c.t_points = 101;
    configs.push_back(c);
  }
  std::size_t files = 0;
  std::vector<std::string> mismatched;
  for (auto& c : configs) {
    std::vector<std::vector<std::filesystem::path>> written;
    for (int run = 0; run < 2; ++run) {
      c.threads = run == 0 ? 1 : std::max(2, o.threads);
      c.out_dir = (root / (c.experiment + "_" + std::to_string(run))).string();
      written.push_back(run_experiment(c).files);
    }
    for (std::size_t i = 0; i < written[0].size(); ++i) {
      ++files;
      if (read_file(written[0][i]) != read_file(written[1][i])) {
        mismatched.push_back(written[0][i].filename().string());
      }
    }
  }
  std::error_code ec;
  std::filesystem::remove_all(root, ec);
  Detail d;
  d << files << " files compared across two runs";
  for (const auto& m : mismatched) d << ", differs: " << m;
  return {mismatched.empty() && files > 0, d.str()};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)(const VerifyOptions&);
};

constexpr Criterion kCriteria[] = {
    {1, "operator algebra", operator_algebra},
    {2, "oracle equivalence", oracle_equivalence},
    {3, "degeneracy structure", degeneracy_structure},
    {4, "level splitting", level_splitting},
    {5, "closed-form echo", closed_form_echo},
    {6, "excited-state universality", excited_universality},
    {7, "pulse string action", pulse_action},
    {8, "phase-diagram detection", phase_diagram},
    {9, "gates", gates},
    {10, "thermal cases", thermal_cases},
    {11, "null results", null_results},
    {12, "determinism", determinism},
};

}  // namespace

VerifyLevel parse_verify_level(const std::string& name) {
  if (name == "fast") return VerifyLevel::fast;
  if (name == "full") return VerifyLevel::full;
  throw InvalidArgument("unknown verify level '" + name + "' (expected fast or full)");
}

std::vector<CriterionResult> run_verification(const VerifyOptions& options,
                                              const CriterionSink& sink) {
  std::vector<CriterionResult> results;
  for (const auto& c : kCriteria) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), c.id) == options.only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    if (c.id == 4 && options.level == VerifyLevel::fast) r.name = "pseudospin block";
    const auto start = std::chrono::steady_clock::now();
    try {
      const Outcome out = c.run(options);
      r.passed = out.passed;
      r.detail = out.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sink) sink(r);
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out.precision(3);
  out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.name << " (" << std::fixed
      << r.seconds << " s): " << r.detail;
  return out.str();
}

}  // namespace tfim::tools

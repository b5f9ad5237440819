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

// Quench dynamics: evolution, Loschmidt echoes, averages and gates.

#pragma once

#include "tfim/hamiltonians.hpp"
#include "tfim/propagator.hpp"
#include "tfim/spectral.hpp"

#include <optional>
#include <vector>

namespace tfim {

struct EchoSeries {
  std::vector<double> times;
  std::vector<double> values;

  /// Checks that every raw value lies in [-1e-9, 1 + 1e-9], then clips.
  static EchoSeries from_raw(std::vector<double> times,
                             std::vector<double> raw);
};

/// `count` evenly spaced points on [t0, t1].
std::vector<double> uniform_grid(double t0, double t1, std::size_t count);

struct EvolveOptions {
  int dense_max_sites = kDefaultDenseMaxSites;
};

StateVector evolve(const StateVector& state, const OperatorSum& h, double t,
                   const EvolveOptions& options = {});

/// Time-ordered product of segment propagators, each under base + segment.
StateVector evolve_schedule(const StateVector& state, const OperatorSum& base,
                            const PulseSchedule& schedule,
                            const EvolveOptions& options = {});

/// L(t) = |<psi| e^{iH_pos t} e^{-iH_pre t} |psi>|^2 on the grid.
EchoSeries loschmidt_echo(const StateVector& state0, const OperatorSum& h_pre,
                          const OperatorSum& h_pos,
                          const std::vector<double>& times,
                          const EvolveOptions& options = {});

/// Same, with a postquench Hamiltonian base + schedule(t); after the schedule
/// ends the evolution continues under base alone.
EchoSeries loschmidt_echo(const StateVector& state0, const OperatorSum& h_pre,
                          const OperatorSum& base,
                          const PulseSchedule& schedule,
                          const std::vector<double>& times,
                          const EvolveOptions& options = {});

double le_closed_form(double kappa_x, double kappa_y, double t);
/// pi / sqrt(kx^2 + ky^2).
double le_period(double kappa_x, double kappa_y);

/// Trapezoidal (1/T) int_0^T L dt. With a known period, the grid step may not
/// exceed period / 50.
double average_le(const EchoSeries& series, double T,
                  std::optional<double> period = std::nullopt);
/// Exact time average of the closed form over [0, T].
double average_le_closed_form(double kappa_x, double kappa_y, double T);

/// Oscillation period from the first autocorrelation peak of a series on a
/// uniform grid.
double autocorrelation_period(const EchoSeries& series);

/// Period of the best least-squares fit a + b cos(wt) + c sin(wt), searched
/// around the autocorrelation estimate.
double fit_period(const EchoSeries& series);

/// Minimum of a series, refined by a parabola through its neighbours.
double series_minimum(const EchoSeries& series);

/// e^{-i eps t}[cos(|B|t) - i (B.sigma/|B|) sin(|B|t)].
Eigen::Matrix2cd subspace_gate(const PseudospinBlock& block, double t);

/// Removes the global phase of u relative to target: u e^{-i arg tr(T^dagger u)}.
Eigen::Matrix2cd strip_global_phase(const Eigen::Matrix2cd& u,
                                    const Eigen::Matrix2cd& target);

Eigen::Matrix2cd hadamard_gate();
Eigen::Matrix2cd phase_gate(double angle);

struct GateResult {
  double fidelity;
  double leakage;  // worst probability lost from the pair subspace
  bool leakage_exceeded;
  bool gauged;
  Eigen::Matrix2cd projected;  // phase-stripped projection of U(t)
};

/// Evolves the pair basis of H0 under H0 + H'(kappa) for time t and compares
/// the projected 2x2 block with the target. Without a gauge reference the
/// pair is gauged against D^dagger + D.
GateResult gate_fidelity(const Eigen::Matrix2cd& target,
                         const ModelParams& params, const KappaVector& kappa,
                         int n, double t, const EvolveOptions& options = {},
                         GaugeOptions gauge = {});

/// Ground state of H0 + kappa_x sigma_1^x quenched to H0 + pulse(delta).
EchoSeries pulse_string_check(const ModelParams& params, double kappa_x,
                              double delta, const std::vector<double>& times,
                              const EvolveOptions& options = {});

/// Lower eigenvector of the pair-n block of H0 + perturbation, expressed in
/// the full space (the prequench state of the pair-n echo).
StateVector pair_ground_state(const SpectrumResult& h0, int n,
                              const OperatorSum& perturbation,
                              const GaugeOptions& gauge);

}  // namespace tfim

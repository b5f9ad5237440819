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

// Structured mixed states over the degenerate spectrum and their Uhlmann
// fidelity echoes.

#pragma once

#include "tfim/dynamics.hpp"
#include "tfim/hamiltonians.hpp"
#include "tfim/spectral.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tfim {

inline constexpr std::uint64_t kDefaultSeed = 12345;

class DensityMatrix {
 public:
  /// Checks Hermiticity (1e-12) and unit trace (1e-10).
  DensityMatrix(int n_sites, CMatrix matrix);

  static DensityMatrix pure(const StateVector& state);

  int n_sites() const { return n_sites_; }
  const CMatrix& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  int n_sites_;
  CMatrix matrix_;
};

enum class EnsembleKind { random_phase, fixed_parity, canonical };

std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(const std::string& name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::canonical;
  double beta = 1.0;
  std::uint64_t seed = kDefaultSeed;
};

struct AngleSample {
  std::vector<double> theta;
  std::vector<double> phi;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double portable_uniform(std::mt19937_64& rng);

/// One draw per pair in ascending pair order.
AngleSample draw_angles(EnsembleKind kind, std::size_t pairs,
                        std::uint64_t seed);

struct Ensemble {
  DensityMatrix rho;
  AngleSample angles;  // empty for the canonical kind
  int ungauged_pairs = 0;
};

/// Builds rho from a sector-resolved H0 spectrum carrying all eigenvectors.
/// Structured kinds require a degenerate ground pair.
Ensemble build_ensemble(const SpectrumResult& h0, const EnsembleSpec& spec,
                        const GaugeOptions& gauge = {});

/// Diagonalizes H0 and builds the ensemble; structured kinds need g < 1.
Ensemble build_ensemble(const ModelParams& params, const EnsembleSpec& spec);

struct UhlmannOptions {
  int threads = 1;
};

/// [Tr sqrt(sqrt(rho0) rho(t) sqrt(rho0))]^2 with rho(t) evolved under H_pos.
EchoSeries uhlmann_echo(const DensityMatrix& rho0, const OperatorSum& h_pos,
                        const std::vector<double>& times,
                        const UhlmannOptions& options = {});
EchoSeries uhlmann_echo(const DensityMatrix& rho0, const DensePropagator& h_pos,
                        const std::vector<double>& times,
                        const UhlmannOptions& options = {});

/// cos^2(kx t) + sin^2(kx t) sin^2(theta) cos^2(phi).
double overlap_formula(double theta, double phi, double kappa_x, double t);

/// High-temperature closed forms: 1/4 + 3/4 cos^2(kx t) for random_phase and
/// cos^2(kx t) for fixed_parity.
double analytic_case_le(EnsembleKind kind, double kappa_x, double t);

enum class PostQuench { exact_d, local };

std::string to_string(PostQuench choice);
PostQuench parse_post_quench(const std::string& name);

/// H0 + kx (D^dagger + D) or H0 + kx sigma_1^x.
OperatorSum thermal_post_hamiltonian(const ModelParams& params, double kappa_x,
                                     PostQuench choice);

struct ThermalCurve {
  EnsembleKind kind;
  double beta;
  double g;
  EchoSeries series;
};

/// Every (kind, beta, g) combination in grid order: kinds outermost, g
/// innermost.
std::vector<ThermalCurve> thermal_experiment(
    const std::vector<EnsembleKind>& kinds, const std::vector<double>& betas,
    const std::vector<double>& g_grid, int n_sites, double J, double kappa_x,
    PostQuench choice, const std::vector<double>& times,
    std::uint64_t seed = kDefaultSeed, int threads = 1);

}  // namespace tfim

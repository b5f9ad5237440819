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

// Exact diagonalization, parity-sector resolution and the effective 2x2
// pseudospin blocks of degenerate pairs.

#pragma once

#include "tfim/hamiltonians.hpp"
#include "tfim/linalg.hpp"
#include "tfim/pauli.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace tfim {

/// One degenerate (or rank-matched) pair; n is 1-based, n = 1 is lowest.
struct PairEntry {
  int n;
  Eigen::Index plus;   // eigenvalue index of |psi_n^+>
  Eigen::Index minus;  // eigenvalue index of |psi_n^->
  double gap;          // |eps_n^+ - eps_n^-|
  bool degenerate;
};

struct SpectrumResult {
  int n_sites = 0;
  RVector eigenvalues;  // ascending
  /// Eigenvector storage; column vector_column[k] holds eigenvector k.
  CMatrix eigenvectors;
  std::vector<Eigen::Index> vector_column;  // -1 where no vector is stored
  /// +1 / -1 parity eigenvalue, 0 when the state is not labeled.
  std::vector<int> parity_labels;
  std::optional<std::vector<PairEntry>> pairs;

  Eigen::Index size() const { return eigenvalues.size(); }
  bool has_vector(Eigen::Index k) const;
  StateVector state(Eigen::Index k) const;
  const PairEntry& pair(int n) const;
};

struct DiagonalizeOptions {
  bool vectors = true;
  int dense_cap = kDefaultDenseCap;
  double hermiticity_tolerance = 1e-10;
};

/// Full eigensystem of a Hermitian operator.
SpectrumResult diagonalize(const OperatorSum& h,
                           const DiagonalizeOptions& options = {});

struct SectorOptions {
  bool vectors = true;
  /// Keep eigenvectors only for the lowest this-many levels of each sector
  /// (negative keeps all).
  int vectors_per_sector = -1;
  int dense_cap = kDefaultDenseCap;
  double hermiticity_tolerance = 1e-10;
  double parity_tolerance = 1e-10;
  double degeneracy_tolerance = 1e-8;
};

/// Diagonalizes a parity-conserving operator separately in the p = +1 and
/// p = -1 sectors and rank-matches the sectors into pairs.
SpectrumResult sector_diagonalize(const OperatorSum& h,
                                  const SectorOptions& options = {});

/// max(1e-8, min(10 J (g/J)^N, 0.2 |J - g|)): below this a pair counts as
/// degenerate.
double degeneracy_tolerance(const ModelParams& params);

/// Parity eigenvalue of a computational basis state.
int basis_parity(int n_sites, std::uint64_t basis);

/// <v| p |v>.
double parity_expectation(const StateVector& v);

/// Lowest `count` eigenpairs by Lanczos; eigenvectors are always stored.
SpectrumResult lowest_eigenpairs(const OperatorSum& h, int count,
                                 const linalg::LanczosOptions& options = {});

/// Lowest `count` eigenpairs using dense diagonalization up to
/// `dense_max_sites` and Lanczos above.
SpectrumResult lowest_states(const OperatorSum& h, int count,
                             int dense_max_sites = 10);

struct GaugeOptions {
  /// Operator whose pair matrix element <+|R|-> is made real positive,
  /// normally D^dagger + D. Without it only the parity-only convention
  /// (largest component real positive) is applied.
  std::optional<OperatorSum> reference;
  /// Extra phase applied to |-> after gauging. Zero in normal use; nonzero
  /// values exist to exercise fault detection.
  double phase_offset = 0.0;
  /// Reference elements smaller than this leave the pair ungauged.
  double min_element = 1e-6;
};

struct GaugedPair {
  StateVector plus;
  StateVector minus;
  Complex reference_element;  // <+|R|-> after gauging
  bool gauged;
};

GaugedPair fix_gauge(const StateVector& plus, const StateVector& minus,
                     const GaugeOptions& options);

/// The reference used for gauge fixing in the ordered phase: D^dagger + D.
OperatorSum edge_reference(const ModelParams& params);

struct PseudospinBlock {
  int n = 0;
  double epsilon_n = 0.0;
  KappaVector B;
  Eigen::Matrix2cd block;
  bool degenerate = false;
  bool gauged = false;
};

/// B.sigma + epsilon I.
Eigen::Matrix2cd pseudospin_matrix(const KappaVector& b, double epsilon);

/// Projects H0 + perturbation onto pair n of a sector-resolved H0 spectrum.
PseudospinBlock pseudospin_block(const SpectrumResult& h0, int n,
                                 const OperatorSum& perturbation,
                                 const GaugeOptions& gauge);

struct SplitRow {
  double g;
  int n;
  double epsilon_n;
  double split_n;
  bool parity_resolved;
};

/// Level splittings of the lowest `pairs` pairs of H0 + H'_S(kappa) across a
/// grid of transverse fields.
std::vector<SplitRow> level_split_scan(const std::vector<double>& g_grid,
                                       const KappaVector& kappa, int n_sites,
                                       int pairs = 8, double J = 1.0,
                                       int threads = 1);

}  // namespace tfim

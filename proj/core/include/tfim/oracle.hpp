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

// Free-fermion (Bogoliubov-de Gennes) solution of the open chain H0.

#pragma once

#include "tfim/hamiltonians.hpp"
#include "tfim/pauli.hpp"

#include <cstdint>
#include <vector>

namespace tfim {

struct BdgSolution {
  int n_sites = 0;
  /// Nonnegative mode energies, ascending.
  RVector single_particle_energies;
  /// -sum(energies) / 2.
  double ground_energy = 0.0;
  /// Column k is the 2N-component Majorana-basis vector of mode k, ordered
  /// (a_1, b_1, ..., a_N, b_N).
  CMatrix mode_vectors;
};

BdgSolution bdg_solve(const ModelParams& params);

struct ManyBodyLevel {
  double energy;
  std::uint64_t occupation;  // bit k set when mode k is filled
  int parity;                // +1 for an even number of filled modes
};

/// Lowest `k_levels` many-body levels by occupation enumeration (N <= 16).
std::vector<ManyBodyLevel> many_body_levels(const BdgSolution& sol,
                                            std::size_t k_levels);
RVector many_body_spectrum(const BdgSolution& sol, std::size_t k_levels);

/// Per-site weight |u_a|^2 + |u_b|^2 of the lowest-energy mode.
RVector edge_mode_profile(const BdgSolution& sol);

}  // namespace tfim

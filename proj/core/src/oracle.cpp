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

#include "tfim/oracle.hpp"

#include "tfim/error.hpp"
#include "tfim/linalg.hpp"

#include <algorithm>
#include <bit>

namespace tfim {

BdgSolution bdg_solve(const ModelParams& params) {
  params.validate();
  const int n = params.n_sites;
  if (n > 2048) throw SizeLimitExceeded("free-fermion chain is too long");
  // H0 = (i/4) sum_kl A_kl w_k w_l with w = (a_1, b_1, ..., a_N, b_N).
  const Eigen::Index dim = 2 * n;
  RMatrix a = RMatrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    a(2 * j, 2 * j + 1) = -2.0 * params.g;
    a(2 * j + 1, 2 * j) = 2.0 * params.g;
    if (j + 1 < n) {
      a(2 * j + 1, 2 * j + 2) = -2.0 * params.J;
      a(2 * j + 2, 2 * j + 1) = 2.0 * params.J;
    }
  }
  const CMatrix ia = Complex(0.0, 1.0) * a.cast<Complex>();
  const auto eig = linalg::hermitian_eigensystem(ia, true);

  BdgSolution out;
  out.n_sites = n;
  // Spectrum of iA is symmetric; the upper half holds the mode energies.
  out.single_particle_energies = eig.values.tail(n).cwiseAbs();
  out.mode_vectors = eig.vectors.rightCols(n);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k;
  std::stable_sort(order.begin(), order.end(), [&](auto l, auto r) {
    return out.single_particle_energies[l] < out.single_particle_energies[r];
  });
  RVector energies(n);
  CMatrix vectors(dim, n);
  for (int k = 0; k < n; ++k) {
    energies[k] = out.single_particle_energies[order[static_cast<std::size_t>(k)]];
    vectors.col(k) = out.mode_vectors.col(order[static_cast<std::size_t>(k)]);
  }
  out.single_particle_energies = std::move(energies);
  out.mode_vectors = std::move(vectors);
  out.ground_energy = -0.5 * out.single_particle_energies.sum();
  return out;
}

std::vector<ManyBodyLevel> many_body_levels(const BdgSolution& sol,
                                            std::size_t k_levels) {
  const int n = sol.n_sites;
  if (n > 16) {
    throw SizeLimitExceeded("occupation enumeration is limited to 16 modes");
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  if (k_levels > total) {
    throw InvalidArgument("requested more levels than the 2^N available");
  }
  std::vector<ManyBodyLevel> levels;
  levels.reserve(total);
  for (std::uint64_t occ = 0; occ < total; ++occ) {
    double e = sol.ground_energy;
    for (int k = 0; k < n; ++k) {
      if ((occ >> k) & 1U) e += sol.single_particle_energies[k];
    }
    levels.push_back({e, occ, std::popcount(occ) % 2 == 0 ? 1 : -1});
  }
  const auto mid = levels.begin() + static_cast<std::ptrdiff_t>(k_levels);
  std::partial_sort(levels.begin(), mid, levels.end(),
                    [](const ManyBodyLevel& l, const ManyBodyLevel& r) {
                      return l.energy < r.energy ||
                             (l.energy == r.energy && l.occupation < r.occupation);
                    });
  levels.erase(mid, levels.end());
  return levels;
}

RVector many_body_spectrum(const BdgSolution& sol, std::size_t k_levels) {
  const auto levels = many_body_levels(sol, k_levels);
  RVector out(static_cast<Eigen::Index>(levels.size()));
  for (std::size_t i = 0; i < levels.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = levels[i].energy;
  }
  return out;
}

RVector edge_mode_profile(const BdgSolution& sol) {
  RVector w(sol.n_sites);
  for (int j = 0; j < sol.n_sites; ++j) {
    w[j] = std::norm(sol.mode_vectors(2 * j, 0)) +
           std::norm(sol.mode_vectors(2 * j + 1, 0));
  }
  return w / w.sum();
}

}  // namespace tfim

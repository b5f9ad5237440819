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

#include "oracles.hpp"

#include "tfim/error.hpp"
#include "tfim/oracle.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace tfim;

TEST_CASE("two-site chain mode energies in closed form") {
  for (double g : {0.3, 1.0, 2.5}) {
    const double J = 0.7;
    const BdgSolution sol = bdg_solve({2, J, g});
    const double r = std::sqrt(4.0 * g * g + J * J);
    REQUIRE(sol.single_particle_energies.size() == 2);
    CHECK(sol.single_particle_energies[0] == Catch::Approx(r - J).margin(1e-12));
    CHECK(sol.single_particle_energies[1] == Catch::Approx(r + J).margin(1e-12));
    CHECK(sol.ground_energy == Catch::Approx(-r).margin(1e-12));
  }
}

TEST_CASE("free-fermion levels equal the Kronecker-built spectrum") {
  for (int n : {3, 5, 7}) {
    for (double g : {0.25, 0.9, 1.0, 1.6}) {
      const double J = 1.3;
      const Eigen::SelfAdjointEigenSolver<oracle::Matrix> ed(oracle::tfim(n, J, g),
                                                             Eigen::EigenvaluesOnly);
      const std::size_t dim = std::size_t{1} << n;
      const RVector levels = many_body_spectrum(bdg_solve({n, J, g}), dim);
      CHECK((levels - ed.eigenvalues()).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("mode vectors are orthonormal") {
  const BdgSolution sol = bdg_solve({6, 1.0, 0.6});
  CHECK(sol.mode_vectors.rows() == 12);
  CHECK(sol.mode_vectors.cols() == 6);
  const CMatrix gram = sol.mode_vectors.adjoint() * sol.mode_vectors;
  CHECK((gram - CMatrix::Identity(6, 6)).norm() < 1e-12);
}

TEST_CASE("bulk modes lie in the band and the edge mode vanishes as g^N") {
  const double g = 0.4;
  const BdgSolution a = bdg_solve({8, 1.0, g});
  const BdgSolution b = bdg_solve({10, 1.0, g});
  for (Eigen::Index k = 1; k < a.single_particle_energies.size(); ++k) {
    CHECK(a.single_particle_energies[k] >= 2.0 * (1.0 - g) - 1e-12);
    CHECK(a.single_particle_energies[k] <= 2.0 * (1.0 + g) + 1e-12);
  }
  CHECK(b.single_particle_energies[0] / a.single_particle_energies[0] ==
        Catch::Approx(g * g).epsilon(0.02));
}

TEST_CASE("many-body levels carry occupations and parities") {
  const BdgSolution sol = bdg_solve({5, 1.0, 0.5});
  const auto levels = many_body_levels(sol, 32);
  REQUIRE(levels.size() == 32);
  CHECK(levels.front().occupation == 0);
  CHECK(levels.front().parity == 1);
  CHECK(levels.front().energy == Catch::Approx(sol.ground_energy));
  CHECK(levels[1].occupation == 1);
  CHECK(levels[1].parity == -1);
  CHECK(std::is_sorted(levels.begin(), levels.end(),
                       [](const auto& x, const auto& y) { return x.energy < y.energy; }));
  for (const auto& l : levels) {
    double e = sol.ground_energy;
    for (int k = 0; k < 5; ++k) {
      if (l.occupation >> k & 1) e += sol.single_particle_energies[k];
    }
    CHECK(l.energy == Catch::Approx(e).margin(1e-12));
    CHECK(l.parity == (std::popcount(l.occupation) % 2 == 0 ? 1 : -1));
  }
  CHECK_THROWS_AS(many_body_levels(bdg_solve({17, 1.0, 0.5}), 4), InvalidArgument);
}

TEST_CASE("edge mode profile sits on the chain ends in the ordered phase") {
  const RVector w = edge_mode_profile(bdg_solve({10, 1.0, 0.3}));
  CHECK(w.sum() == Catch::Approx(1.0).margin(1e-12));
  CHECK(w[0] + w[9] > 0.8);
  const RVector d = edge_mode_profile(bdg_solve({10, 1.0, 1.8}));
  CHECK(d[0] + d[9] < w[0] + w[9]);
}

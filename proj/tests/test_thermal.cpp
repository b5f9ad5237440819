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
#include "tfim/thermal.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace tfim;
using Catch::Matchers::ContainsSubstring;

namespace {

oracle::Matrix psd_sqrt(const oracle::Matrix& m) {
  const Eigen::SelfAdjointEigenSolver<oracle::Matrix> es(m);
  const Eigen::VectorXd r = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * r.asDiagonal() * es.eigenvectors().adjoint();
}

double uhlmann_reference(const oracle::Matrix& rho, const oracle::Matrix& sigma) {
  const oracle::Matrix s = psd_sqrt(rho);
  const oracle::Matrix inner = s * sigma * s;
  const Eigen::SelfAdjointEigenSolver<oracle::Matrix> es(0.5 * (inner + inner.adjoint()));
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

oracle::Matrix random_density(int n, unsigned seed, int rank) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const Eigen::Index dim = Eigen::Index{1} << n;
  oracle::Matrix a(dim, rank);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = Complex(normal(rng), normal(rng));
  oracle::Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix(2, random_density(2, 1, 2)));
  CMatrix bad = random_density(2, 1, 2);
  bad(0, 1) += 0.1;
  CHECK_THROWS_AS(DensityMatrix(2, bad), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(2, 2.0 * random_density(2, 1, 2)), InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix(3, random_density(2, 1, 2)), DimensionMismatch);
  const StateVector up = StateVector::all_up(2);
  CHECK(DensityMatrix::pure(up).matrix()(0, 0) == Complex(1.0, 0.0));
}

TEST_CASE("Uhlmann echo matches the square-root definition") {
  const int n = 3;
  const OperatorSum h = build_h0({n, 1.0, 0.7}) + OperatorSum(single_site(n, 1, Axis::x), 0.2);
  const oracle::Matrix hd = to_dense(h);
  for (int rank : {1, 3, 8}) {
    const oracle::Matrix rho = random_density(n, 10 + rank, rank);
    const std::vector<double> times{0.0, 0.8, 5.1};
    const auto e = uhlmann_echo(DensityMatrix(n, rho), h, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const oracle::Matrix u = oracle::propagator(hd, times[i]);
      CHECK(e.values[i] ==
            Catch::Approx(uhlmann_reference(rho, u * rho * u.adjoint())).margin(1e-9));
    }
  }
}

TEST_CASE("Uhlmann echo of a pure state is the return probability") {
  const int n = 4;
  const OperatorSum h = build_h0({n, 1.0, 0.5}) + OperatorSum(single_site(n, 2, Axis::x), 0.3);
  const StateVector psi = StateVector::basis(n, 5);
  const std::vector<double> times{0.3, 1.9};
  const auto e = uhlmann_echo(DensityMatrix::pure(psi), h, times, {2});
  for (std::size_t i = 0; i < times.size(); ++i) {
    const CVector v = oracle::propagator(to_dense(h), times[i]) * psi.amplitudes();
    CHECK(e.values[i] == Catch::Approx(std::norm(v[5])).margin(1e-10));
  }
}

TEST_CASE("canonical ensemble is the Gibbs state") {
  const ModelParams p{5, 1.0, 0.6};
  const Ensemble ens = build_ensemble(p, {EnsembleKind::canonical, 0.7, 1});
  const oracle::Matrix w = oracle::expm(-0.7 * oracle::tfim(5, 1.0, 0.6));
  CHECK((ens.rho.matrix() - w / w.trace().real()).norm() < 1e-10);
  CHECK(ens.angles.theta.empty());
  // Stationary under H0.
  const auto e = uhlmann_echo(ens.rho, build_h0(p), {0.0, 3.0});
  CHECK(e.values[1] == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("structured ensembles") {
  const ModelParams p{6, 1.0, 0.4};
  for (EnsembleKind kind : {EnsembleKind::random_phase, EnsembleKind::fixed_parity}) {
    const Ensemble ens = build_ensemble(p, {kind, 1.0, 77});
    const CMatrix& rho = ens.rho.matrix();
    CHECK(ens.rho.trace() == Catch::Approx(1.0));
    CHECK(ens.angles.theta.size() == 32);
    CHECK(ens.ungauged_pairs == 0);
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    int rank = 0;
    for (double l : es.eigenvalues()) rank += l > 1e-12;
    CHECK(rank == 32);
  }
  // Fixed parity puts all weight in the + member of every pair.
  const Ensemble fixed = build_ensemble(p, {EnsembleKind::fixed_parity, 1.0, 77});
  const CMatrix par = to_dense(build_parity(6));
  CHECK((par * fixed.rho.matrix()).trace().real() == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("structured ensembles need the ordered phase") {
  REQUIRE_THROWS_WITH(build_ensemble({6, 1.0, 1.2}, {EnsembleKind::random_phase, 1.0, 1}),
                      ContainsSubstring("absent in the disordered phase"));
  CHECK_THROWS_AS(build_ensemble({6, 1.0, 1.2}, {EnsembleKind::fixed_parity, 1.0, 1}),
                  InvalidArgument);
  CHECK_NOTHROW(build_ensemble({6, 1.0, 1.2}, {EnsembleKind::canonical, 1.0, 1}));
  CHECK_THROWS_AS(build_ensemble({4, 1.0, 0.5}, {EnsembleKind::canonical, -1.0, 1}),
                  InvalidArgument);
}

TEST_CASE("portable uniform draws") {
  std::mt19937_64 a;
  std::mt19937_64 b;
  const std::uint64_t first = b();
  CHECK(first == 14514284786278117030ULL);
  CHECK(portable_uniform(a) == std::ldexp(static_cast<double>(first >> 11), -53));
  std::mt19937_64 c(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = portable_uniform(c);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("angle samples") {
  const AngleSample r = draw_angles(EnsembleKind::random_phase, 64, 9);
  const AngleSample again = draw_angles(EnsembleKind::random_phase, 64, 9);
  const AngleSample other = draw_angles(EnsembleKind::random_phase, 64, 10);
  CHECK(r.theta == again.theta);
  CHECK(r.theta != other.theta);
  for (std::size_t i = 0; i < 64; ++i) {
    CHECK(r.theta[i] >= 0.0);
    CHECK(r.theta[i] < std::numbers::pi);
    CHECK(r.phi[i] == 2.0 * r.theta[i]);
  }
  const AngleSample f = draw_angles(EnsembleKind::fixed_parity, 8, 9);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(f.theta[i] == std::numbers::pi);
    CHECK(f.phi[i] < 2.0 * std::numbers::pi);
  }
  CHECK(draw_angles(EnsembleKind::canonical, 8, 9).theta.empty());
}

TEST_CASE("overlap formula and high-temperature closed forms") {
  const double kx = 0.1;
  for (double t : {0.0, 4.0, 15.7}) {
    const double c = std::cos(kx * t);
    const double s = std::sin(kx * t);
    CHECK(overlap_formula(0.7, 1.4, kx, t) ==
          Catch::Approx(c * c + s * s * std::pow(std::sin(0.7), 2) * std::pow(std::cos(1.4), 2)));
    CHECK(analytic_case_le(EnsembleKind::random_phase, kx, t) == Catch::Approx(0.25 + 0.75 * c * c));
    CHECK(analytic_case_le(EnsembleKind::fixed_parity, kx, t) == Catch::Approx(c * c));
  }
  CHECK_THROWS_AS(analytic_case_le(EnsembleKind::canonical, kx, 1.0), InvalidArgument);
}

TEST_CASE("fixed parity at infinite temperature follows cos^2 under the exact edge quench") {
  const ModelParams p{6, 1.0, 0.3};
  const double kx = 0.1;
  const Ensemble ens = build_ensemble(p, {EnsembleKind::fixed_parity, 0.0, 3});
  const std::vector<double> times{0.0, 5.0, 10.0, 15.7};
  const auto e = uhlmann_echo(ens.rho, thermal_post_hamiltonian(p, kx, PostQuench::exact_d), times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(e.values[i] ==
          Catch::Approx(analytic_case_le(EnsembleKind::fixed_parity, kx, times[i])).margin(0.02));
  }
}

TEST_CASE("names round trip") {
  for (auto k : {EnsembleKind::random_phase, EnsembleKind::fixed_parity, EnsembleKind::canonical}) {
    CHECK(parse_ensemble_kind(to_string(k)) == k);
  }
  CHECK(parse_post_quench(to_string(PostQuench::exact_d)) == PostQuench::exact_d);
  CHECK_THROWS_AS(parse_ensemble_kind("hot"), InvalidArgument);
  CHECK_THROWS_AS(parse_post_quench("global"), InvalidArgument);
}

TEST_CASE("thermal experiment ordering and determinism") {
  const auto times = uniform_grid(0.0, 10.0, 3);
  const auto a = thermal_experiment({EnsembleKind::random_phase, EnsembleKind::canonical},
                                    {1.0, 2.0}, {0.3, 0.5}, 4, 1.0, 0.1, PostQuench::local,
                                    times, 42, 1);
  const auto b = thermal_experiment({EnsembleKind::random_phase, EnsembleKind::canonical},
                                    {1.0, 2.0}, {0.3, 0.5}, 4, 1.0, 0.1, PostQuench::local,
                                    times, 42, 3);
  REQUIRE(a.size() == 8);
  CHECK(a[0].kind == EnsembleKind::random_phase);
  CHECK(a[1].g == 0.5);
  CHECK(a[2].beta == 2.0);
  CHECK(a[4].kind == EnsembleKind::canonical);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].series.values == b[i].series.values);
  CHECK_THROWS_AS(thermal_experiment({EnsembleKind::fixed_parity}, {1.0}, {1.3}, 4, 1.0, 0.1,
                                     PostQuench::local, times),
                  InvalidArgument);
}

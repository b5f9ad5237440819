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

#include "tfim/dynamics.hpp"
#include "tfim/error.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace tfim;

namespace {

StateVector random_state(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CVector v(Eigen::Index{1} << n);
  for (auto& x : v) x = Complex(normal(rng), normal(rng));
  return StateVector(n, v.normalized());
}

OperatorSum test_hamiltonian(int n) {
  const ModelParams p{n, 1.0, 0.55};
  return build_h0(p) + build_h_prime(p, {0.2, -0.1, 0.05}) +
         OperatorSum(single_site(n, 2, Axis::y), 0.3);
}

double echo_reference(const StateVector& psi, const oracle::Matrix& pre,
                      const oracle::Matrix& pos, double t) {
  const CVector a = oracle::propagator(pre, t) * psi.amplitudes();
  const CVector b = oracle::propagator(pos, t) * psi.amplitudes();
  return std::norm(b.dot(a));
}

}  // namespace

TEST_CASE("uniform grid") {
  const auto t = uniform_grid(0.0, 2.0, 5);
  REQUIRE(t.size() == 5);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 2.0);
  CHECK(t[1] == Catch::Approx(0.5));
  CHECK_THROWS_AS(uniform_grid(1.0, 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), InvalidArgument);
}

TEST_CASE("dense and Chebyshev evolution match the Taylor exponential") {
  const int n = 5;
  const OperatorSum h = test_hamiltonian(n);
  const StateVector psi = random_state(n, 1);
  for (double t : {0.0, 0.37, 3.7, 41.0}) {
    const CVector expected = oracle::propagator(to_dense(h), t) * psi.amplitudes();
    CHECK((evolve(psi, h, t, {10}).amplitudes() - expected).norm() < 1e-10);
    CHECK((evolve(psi, h, t, {0}).amplitudes() - expected).norm() < 1e-10);
  }
}

TEST_CASE("grid evolution agrees with single-time evolution") {
  const int n = 6;
  const OperatorSum h = test_hamiltonian(n);
  const CVector psi = random_state(n, 2).amplitudes();
  const std::vector<double> times{0.0, 1.0, 2.5, 80.0, 80.5};
  const DensePropagator dense(h);
  const ChebyshevPropagator cheb(h);
  const auto a = dense.evolve_grid(psi, times);
  const auto b = cheb.evolve_grid(psi, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK((a[i] - dense.evolve(psi, times[i])).norm() < 1e-11);
    CHECK((a[i] - b[i]).norm() < 1e-9);
    CHECK(b[i].norm() == Catch::Approx(1.0).margin(1e-11));
  }
}

TEST_CASE("schedule evolution is the ordered product of segments") {
  const int n = 3;
  const OperatorSum base = build_h0({n, 1.0, 0.8});
  PulseSchedule s(n);
  s.append(0.3, OperatorSum(single_site(n, 1, Axis::x), 0.7));
  s.append(0.2, OperatorSum(single_site(n, 3, Axis::z), -1.1));
  const StateVector psi = random_state(n, 3);
  const oracle::Matrix u = oracle::propagator(to_dense(base + s.segments()[1].hamiltonian), 0.2) *
                           oracle::propagator(to_dense(base + s.segments()[0].hamiltonian), 0.3);
  CHECK((evolve_schedule(psi, base, s).amplitudes() - u * psi.amplitudes()).norm() < 1e-11);
}

TEST_CASE("a short strong pulse acts as (-i)^N prod Z") {
  const int n = 3;
  const double delta = 1e-4;
  const StateVector psi = random_state(n, 4);
  const CVector out = evolve_schedule(psi, build_h0({n, 1.0, 0.6}), build_pulse(n, delta)).amplitudes();
  oracle::Matrix z = oracle::Matrix::Identity(8, 8);
  for (int j = 1; j <= n; ++j) z = z * oracle::site_op(n, j, 'Z');
  const CVector expected = std::pow(Complex(0, -1), n) * z * psi.amplitudes();
  CHECK((out - expected).norm() < 1e-3);
}

TEST_CASE("echo of identical Hamiltonians is one") {
  const OperatorSum h = test_hamiltonian(4);
  const auto e = loschmidt_echo(random_state(4, 5), h, h, uniform_grid(0.0, 10.0, 11));
  for (double v : e.values) CHECK(v == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("echo matches the matrix-exponential definition") {
  const int n = 4;
  const ModelParams p{n, 1.0, 0.5};
  const OperatorSum pre = build_h0(p) + build_h_prime(p, {0.1, 0, 0});
  const OperatorSum pos = build_h0(p) + build_h_prime(p, {0.1, 0.3, 0});
  const auto times = uniform_grid(0.0, 12.0, 7);
  for (const StateVector& psi : {random_state(n, 6), lowest_states(pre, 1).state(0)}) {
    for (int dense_max : {10, 0}) {
      const auto e = loschmidt_echo(psi, pre, pos, times, {dense_max});
      for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(e.values[i] ==
              Catch::Approx(echo_reference(psi, to_dense(pre), to_dense(pos), times[i])).margin(1e-10));
      }
    }
  }
  CHECK_THROWS_AS(loschmidt_echo(StateVector(n, 2.0 * random_state(n, 1).amplitudes()), pre, pos,
                                 times),
                  InvalidArgument);
  CHECK_THROWS_AS(loschmidt_echo(random_state(n, 1), pre, pos, {1.0, 0.5}), InvalidArgument);
}

TEST_CASE("pulsed echo follows the schedule, then the base") {
  const int n = 3;
  const OperatorSum pre = build_h0({n, 1.0, 0.5}) + OperatorSum(single_site(n, 1, Axis::x), 0.05);
  const OperatorSum base = build_h0({n, 1.0, 0.5});
  const double delta = 0.2;
  const PulseSchedule pulse = build_pulse(n, delta);
  const StateVector psi = lowest_states(pre, 1).state(0);
  const std::vector<double> times{0.0, 0.1, 0.2, 0.7};
  const auto e = loschmidt_echo(psi, pre, base, pulse, times);
  const oracle::Matrix hp = to_dense(pre);
  const oracle::Matrix on = to_dense(base + pulse.segments()[0].hamiltonian);
  const oracle::Matrix off = to_dense(base);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    const oracle::Matrix u = t <= delta ? oracle::propagator(on, t)
                                        : oracle::propagator(off, t - delta) * oracle::propagator(on, delta);
    const CVector a = oracle::propagator(hp, t) * psi.amplitudes();
    const CVector b = u * psi.amplitudes();
    CHECK(e.values[i] == Catch::Approx(std::norm(b.dot(a))).margin(1e-10));
  }
}

TEST_CASE("closed-form echo and its period") {
  for (double t : {0.0, 3.3, 14.05, 27.0}) {
    CHECK(le_closed_form(0.05, 0.1, t) == Catch::Approx(oracle::pseudospin_echo(0.05, 0.1, t)).margin(1e-14));
  }
  CHECK(le_period(0.05, 0.1) == Catch::Approx(std::numbers::pi / std::hypot(0.05, 0.1)));
  CHECK(le_closed_form(0.05, 0.1, le_period(0.05, 0.1) / 2.0) == Catch::Approx(0.2));
  CHECK_THROWS_AS(le_period(0.0, 0.0), InvalidArgument);
}

TEST_CASE("time averages") {
  // Composite Simpson on the independent closed form.
  const double T = 500.0;
  const int m = 200000;
  double sum = 0.0;
  for (int i = 0; i <= m; ++i) {
    const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * oracle::pseudospin_echo(0.05, 0.1, T * i / m);
  }
  const double simpson = sum * (T / m) / 3.0 / T;
  CHECK(average_le_closed_form(0.05, 0.1, T) == Catch::Approx(simpson).margin(1e-9));

  const double period = le_period(0.05, 0.1);
  const auto times = uniform_grid(0.0, T, 5001);
  std::vector<double> values;
  for (double t : times) values.push_back(oracle::pseudospin_echo(0.05, 0.1, t));
  const EchoSeries s = EchoSeries::from_raw(times, values);
  CHECK(average_le(s, T, period) == Catch::Approx(simpson).margin(1e-5));
  CHECK(average_le(s, 250.0) == Catch::Approx(average_le_closed_form(0.05, 0.1, 250.0)).margin(1e-5));

  const EchoSeries coarse = EchoSeries::from_raw(uniform_grid(0.0, T, 101), std::vector<double>(101, 1.0));
  CHECK_THROWS_AS(average_le(coarse, T, period), InvalidArgument);
  CHECK_THROWS_AS(average_le(s, 600.0), InvalidArgument);
}

TEST_CASE("period estimators on a synthetic echo") {
  const auto times = uniform_grid(0.0, 90.0, 1000);
  std::vector<double> v;
  for (double t : times) v.push_back(oracle::pseudospin_echo(0.05, 0.1, t));
  const EchoSeries s = EchoSeries::from_raw(times, v);
  const double tau = le_period(0.05, 0.1);
  CHECK(autocorrelation_period(s) == Catch::Approx(tau).epsilon(0.03));
  CHECK(fit_period(s) == Catch::Approx(tau).epsilon(1e-6));
  CHECK(series_minimum(s) == Catch::Approx(0.2).margin(1e-6));

  const EchoSeries flat = EchoSeries::from_raw(times, std::vector<double>(times.size(), 1.0));
  CHECK_THROWS_AS(autocorrelation_period(flat), ComputationError);
}

TEST_CASE("series minimum refines between samples") {
  const auto times = uniform_grid(0.0, 2.0, 21);
  std::vector<double> v;
  for (double t : times) v.push_back(0.3 + 0.1 * (t - 1.234) * (t - 1.234));
  CHECK(series_minimum(EchoSeries::from_raw(times, v)) == Catch::Approx(0.3).margin(1e-12));
}

TEST_CASE("raw echo values are range-checked then clipped") {
  const auto s = EchoSeries::from_raw({0.0, 1.0}, {1.0 + 1e-12, -1e-12});
  CHECK(s.values[0] == 1.0);
  CHECK(s.values[1] == 0.0);
  CHECK_THROWS_AS(EchoSeries::from_raw({0.0}, {1.1}), ComputationError);
  CHECK_THROWS_AS(EchoSeries::from_raw({0.0, 1.0}, {1.0}), DimensionMismatch);
}

TEST_CASE("two-level gates") {
  const Eigen::Matrix2cd h = hadamard_gate();
  CHECK((h * h - Eigen::Matrix2cd::Identity()).norm() < 1e-15);
  CHECK(h(1, 1).real() == Catch::Approx(-1.0 / std::sqrt(2.0)));
  const Eigen::Matrix2cd s = phase_gate(std::numbers::pi / 2.0);
  CHECK(std::abs(s(1, 1) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(s(0, 0) - 1.0) < 1e-15);

  PseudospinBlock block;
  block.B = {0.3, -0.2, 0.4};
  block.epsilon_n = -2.0;
  const double t = 1.7;
  const Eigen::Matrix2cd u = subspace_gate(block, t);
  const oracle::Matrix ref = oracle::propagator(pseudospin_matrix(block.B, block.epsilon_n), t);
  CHECK((u - ref).norm() < 1e-13);
  CHECK((u.adjoint() * u - Eigen::Matrix2cd::Identity()).norm() < 1e-14);

  const Eigen::Matrix2cd phased = std::polar(1.0, 0.4) * h;
  CHECK((strip_global_phase(phased, h) - h).norm() < 1e-14);
}

TEST_CASE("full-system gates in a small ordered chain") {
  const ModelParams p{6, 1.0, 0.3};
  const double k = 0.05;
  const GateResult had = gate_fidelity(hadamard_gate(), p, {k, 0.0, k}, 1,
                                       std::numbers::pi / (2.0 * std::sqrt(2.0) * k));
  CHECK(had.gauged);
  CHECK(had.fidelity >= 0.99);
  CHECK_FALSE(had.leakage_exceeded);
  const double t = std::numbers::pi / (4.0 * k);
  const GateResult ph = gate_fidelity(phase_gate(2.0 * k * t), p, {0.0, 0.0, k}, 1, t);
  CHECK(ph.fidelity >= 0.999);

  GaugeOptions bad;
  bad.phase_offset = std::numbers::pi / 2.0;
  const GateResult broken = gate_fidelity(hadamard_gate(), p, {k, 0.0, k}, 1,
                                          std::numbers::pi / (2.0 * std::sqrt(2.0) * k), {}, bad);
  CHECK(broken.fidelity < 0.9);
}

TEST_CASE("pulse string check in the two phases") {
  const std::vector<double> times{0.0, 0.1};
  const auto ordered = pulse_string_check({8, 1.0, 0.5}, 0.05, 0.1, times);
  CHECK(ordered.values[0] == Catch::Approx(1.0));
  CHECK(ordered.values[1] < 0.05);
  const auto disordered = pulse_string_check({8, 1.0, 1.5}, 0.05, 0.1, times);
  CHECK(disordered.values[1] > 0.95);
}

TEST_CASE("pair ground state is the lower eigenvector of the projected block") {
  const ModelParams p{6, 1.0, 0.4};
  SectorOptions opts;
  opts.vectors_per_sector = 2;
  opts.degeneracy_tolerance = degeneracy_tolerance(p);
  const SpectrumResult spec = sector_diagonalize(build_h0(p), opts);
  GaugeOptions gauge;
  gauge.reference = edge_reference(p);
  const OperatorSum pert = build_h_prime(p, {0.05, 0.0, 0.0});
  const StateVector psi = pair_ground_state(spec, 2, pert, gauge);
  CHECK(psi.norm() == Catch::Approx(1.0));
  const PseudospinBlock block = pseudospin_block(spec, 2, pert, gauge);
  const double expected = block.epsilon_n - block.B.norm();
  const double energy = psi.inner(apply(build_h0(p) + pert, psi)).real();
  CHECK(energy == Catch::Approx(expected).margin(1e-10));
}

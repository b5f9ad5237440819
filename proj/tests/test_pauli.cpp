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
#include "tfim/operator_json.hpp"
#include "tfim/pauli.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace tfim;
using Catch::Matchers::ContainsSubstring;

namespace {

char axis_char(std::uint64_t x, std::uint64_t z) {
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

// Dense matrix of i^q X^x Z^z from Kronecker products. XZ = -iY per site.
oracle::Matrix reference(const PauliString& p) {
  const int n = p.n_sites();
  std::string label;
  int y_count = 0;
  for (int s = 1; s <= n; ++s) {
    const auto bit = site_bit(n, s);
    const char c = axis_char(p.x_mask() & bit, p.z_mask() & bit);
    y_count += c == 'Y';
    label.push_back(c);
  }
  const Complex phase = std::pow(Complex(0, 1), p.phase_quadrant() - y_count);
  return phase * oracle::string_matrix(label);
}

PauliString random_string(std::mt19937_64& rng, int n) {
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  return PauliString(n, rng() & mask, rng() & mask, static_cast<int>(rng() % 4));
}

}  // namespace

TEST_CASE("site 1 is the most significant bit and a set bit is spin down") {
  CHECK(site_bit(4, 1) == 0b1000);
  CHECK(site_bit(4, 4) == 0b0001);
  const auto [image, amp] = single_site(3, 1, Axis::z).act(0b100);
  CHECK(image == 0b100);
  CHECK(amp == Complex(-1.0, 0.0));
  const auto [flip, one] = single_site(3, 2, Axis::x).act(0b000);
  CHECK(flip == 0b010);
  CHECK(one == Complex(1.0, 0.0));
}

TEST_CASE("dense strings match Kronecker products") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const PauliString p = random_string(rng, 3);
    CHECK((to_dense(p) - reference(p)).norm() < 1e-14);
  }
  CHECK((to_dense(single_site(2, 1, Axis::y)) - oracle::string_matrix("YI")).norm() < 1e-14);
}

TEST_CASE("string products agree with matrix products") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const PauliString a = random_string(rng, 4);
    const PauliString b = random_string(rng, 4);
    const auto ab = a * b;
    CHECK((reference(ab) - reference(a) * reference(b)).norm() < 1e-13);
    const bool commute = (reference(a) * reference(b) - reference(b) * reference(a)).norm() < 1e-12;
    CHECK(a.commutes_with(b) == commute);
  }
}

TEST_CASE("adjoint and hermiticity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const PauliString p = random_string(rng, 3);
    CHECK((reference(p.adjoint()) - reference(p).adjoint()).norm() < 1e-14);
    CHECK(p.is_hermitian() == ((reference(p) - reference(p).adjoint()).norm() < 1e-14));
  }
}

TEST_CASE("Y equals i X Z") {
  const PauliString y(1, 1, 1, 1);
  CHECK((to_dense(y) - oracle::pauli('Y')).norm() < 1e-15);
  CHECK(y.label() == "+i XZ1");
}

TEST_CASE("operator sums merge like terms") {
  OperatorSum h(2);
  h.add(0.5, single_site(2, 1, Axis::x));
  h.add(0.25, single_site(2, 1, Axis::x));
  h.add(1.0, single_site(2, 2, Axis::z));
  h.add(-1.0, single_site(2, 2, Axis::z));
  CHECK(h.size() == 1);
  CHECK(h.coefficient(site_bit(2, 1), 0) == Complex(0.75, 0.0));
  // Phase carried by the string moves into the coefficient.
  OperatorSum s(PauliString(1, 1, 1, 1), 2.0);
  CHECK(s.terms()[0].string.phase_quadrant() == 0);
  CHECK(s.terms()[0].coefficient == Complex(0.0, 2.0));
}

TEST_CASE("symbolic products and commutators match dense algebra") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  auto random_sum = [&](int terms) {
    OperatorSum op(3);
    for (int k = 0; k < terms; ++k) op.add(Complex(normal(rng), normal(rng)), random_string(rng, 3));
    return op;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const OperatorSum a = random_sum(5);
    const OperatorSum b = random_sum(4);
    const CMatrix da = to_dense(a);
    const CMatrix db = to_dense(b);
    CHECK((to_dense(a * b) - da * db).norm() < 1e-12);
    CHECK((to_dense(commutator(a, b)) - (da * db - db * da)).norm() < 1e-12);
    CHECK((to_dense(anticommutator(a, b)) - (da * db + db * da)).norm() < 1e-12);
    CHECK((to_dense(a.adjoint()) - da.adjoint()).norm() < 1e-12);
    CHECK(a.norm_bound() >= da.operatorNorm() - 1e-12);
  }
}

TEST_CASE("matrix-free application matches the dense matrix") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  for (int n : {1, 4, 6}) {
    OperatorSum op(n);
    for (int k = 0; k < 12; ++k) op.add(Complex(normal(rng), normal(rng)), random_string(rng, n));
    const SparseOperator sparse(op);
    CVector v(Eigen::Index{1} << n);
    for (auto& x : v) x = Complex(normal(rng), normal(rng));
    CHECK((sparse.apply(v) - to_dense(op) * v).norm() < 1e-12 * (1.0 + v.norm()));
    CHECK((apply(op, StateVector(n, v)).amplitudes() - to_dense(op) * v).norm() < 1e-12 * (1.0 + v.norm()));
  }
}

TEST_CASE("real operators are flagged as real") {
  OperatorSum h(2);
  h.add(1.0, single_site(2, 1, Axis::x) * single_site(2, 2, Axis::x));
  h.add(0.3, single_site(2, 2, Axis::z));
  CHECK(SparseOperator(h).is_real());
  h.add(0.1, single_site(2, 1, Axis::y));
  CHECK_FALSE(SparseOperator(h).is_real());
}

TEST_CASE("state vectors") {
  const StateVector up = StateVector::all_up(3);
  CHECK(up.dimension() == 8);
  CHECK(up.amplitudes()[0] == Complex(1.0, 0.0));
  CHECK(std::abs(StateVector::basis(3, 5).inner(StateVector::basis(3, 5)) - 1.0) < 1e-15);
  CHECK_THROWS_AS(StateVector::basis(3, 8), InvalidArgument);
  CHECK_THROWS_AS(StateVector(3, CVector::Zero(4)), DimensionMismatch);
}

TEST_CASE("dense materialization respects the size cap") {
  CHECK_THROWS_AS(to_dense(PauliString::identity(15)), SizeLimitExceeded);
  CHECK_THROWS_AS(to_dense(PauliString::identity(6), 5), SizeLimitExceeded);
}

TEST_CASE("mixing chain lengths is rejected") {
  OperatorSum a(3);
  OperatorSum b(PauliString::identity(4));
  CHECK_THROWS_AS(a += b, DimensionMismatch);
}

TEST_CASE("operator JSON round trip") {
  OperatorSum op(5);
  op.add(Complex(0.5, -0.25), single_site(5, 1, Axis::x) * single_site(5, 5, Axis::y));
  op.add(-1.0, single_site(5, 3, Axis::z));
  const std::string text = operator_to_json(op);
  const OperatorSum back = operator_from_json(text);
  CHECK(back.n_sites() == 5);
  CHECK(back.max_coefficient_distance(op) == 0.0);
  CHECK_THROWS_AS(operator_from_json("{\"n_sites\": 2, \"terms\": [{\"x_mask\": \"0x8\"}]}"),
                  InvalidArgument);
}

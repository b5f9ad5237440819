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

#include "tfim/pauli.hpp"

#include "tfim/error.hpp"
#include "tfim/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace tfim {
namespace {

constexpr Complex kQuadrants[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int parity_of(std::uint64_t bits) { return std::popcount(bits) & 1; }

void check_site_count(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxMaskSites) {
    throw InvalidArgument("n_sites must lie in [1, " +
                          std::to_string(kMaxMaskSites) + "], got " +
                          std::to_string(n_sites));
  }
}

void check_dense_cap(int n_sites, int cap) {
  if (n_sites > cap) {
    throw SizeLimitExceeded("dense materialization of " +
                            std::to_string(n_sites) +
                            " sites exceeds the cap of " +
                            std::to_string(cap) + " sites");
  }
}

std::uint64_t full_mask(int n_sites) {
  return n_sites == 64 ? ~std::uint64_t{0}
                       : (std::uint64_t{1} << n_sites) - 1;
}

auto mask_key(const PauliString& p) {
  return std::pair{p.x_mask(), p.z_mask()};
}

}  // namespace

std::uint64_t site_range_mask(int n_sites, int first, int last) {
  std::uint64_t mask = 0;
  for (int site = first; site <= last; ++site) mask |= site_bit(n_sites, site);
  return mask;
}

// ---------------------------------------------------------------------------
// PauliString

PauliString::PauliString(int n_sites, std::uint64_t x_mask,
                         std::uint64_t z_mask, int phase_quadrant)
    : n_sites_(n_sites),
      x_mask_(x_mask),
      z_mask_(z_mask),
      quadrant_(((phase_quadrant % 4) + 4) % 4) {
  check_site_count(n_sites);
  if ((x_mask | z_mask) & ~full_mask(n_sites)) {
    throw InvalidArgument("Pauli string mask has bits beyond n_sites");
  }
}

PauliString PauliString::identity(int n_sites) {
  return PauliString(n_sites, 0, 0, 0);
}

Complex PauliString::phase() const { return kQuadrants[quadrant_]; }

bool PauliString::is_hermitian() const {
  // (X^x Z^z)^dagger = (-1)^{|x&z|} X^x Z^z, so i^q must absorb that sign.
  return (quadrant_ & 1) == parity_of(x_mask_ & z_mask_);
}

bool PauliString::commutes_with(const PauliString& other) const {
  return parity_of((x_mask_ & other.z_mask_) ^ (z_mask_ & other.x_mask_)) ==
         0;
}

PauliString PauliString::adjoint() const {
  const int flip = 2 * parity_of(x_mask_ & z_mask_);
  return PauliString(n_sites_, x_mask_, z_mask_, -quadrant_ + flip);
}

PauliString PauliString::with_phase(int quadrant) const {
  return PauliString(n_sites_, x_mask_, z_mask_, quadrant);
}

std::pair<std::uint64_t, Complex> PauliString::act(std::uint64_t basis) const {
  Complex amp = phase();
  if (parity_of(z_mask_ & basis)) amp = -amp;
  return {basis ^ x_mask_, amp};
}

std::string PauliString::label() const {
  static constexpr const char* kPhase[4] = {"+", "+i", "-", "-i"};
  std::ostringstream out;
  out << kPhase[quadrant_];
  if (is_identity()) {
    out << " I";
    return out.str();
  }
  for (int site = 1; site <= n_sites_; ++site) {
    const auto bit = site_bit(n_sites_, site);
    const bool x = x_mask_ & bit;
    const bool z = z_mask_ & bit;
    if (x && z) {
      out << " XZ" << site;
    } else if (x) {
      out << " X" << site;
    } else if (z) {
      out << " Z" << site;
    }
  }
  return out.str();
}

PauliString single_site(int n_sites, int site, Axis axis) {
  check_site_count(n_sites);
  if (site < 1 || site > n_sites) {
    throw InvalidArgument("site " + std::to_string(site) +
                          " out of range [1, " + std::to_string(n_sites) +
                          "]");
  }
  const auto bit = site_bit(n_sites, site);
  switch (axis) {
    case Axis::x:
      return PauliString(n_sites, bit, 0, 0);
    case Axis::z:
      return PauliString(n_sites, 0, bit, 0);
    case Axis::y:
      return PauliString(n_sites, bit, bit, 1);
  }
  throw InvalidArgument("unknown axis");
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_sites() != b.n_sites()) {
    throw DimensionMismatch("cannot multiply Pauli strings on " +
                            std::to_string(a.n_sites()) + " and " +
                            std::to_string(b.n_sites()) + " sites");
  }
  // X^x1 Z^z1 X^x2 Z^z2 = (-1)^{|z1 & x2|} X^{x1^x2} Z^{z1^z2}
  const int sign = 2 * parity_of(a.z_mask() & b.x_mask());
  return PauliString(a.n_sites(), a.x_mask() ^ b.x_mask(),
                     a.z_mask() ^ b.z_mask(),
                     a.phase_quadrant() + b.phase_quadrant() + sign);
}

CMatrix to_dense(const PauliString& p, int cap) {
  return to_dense(OperatorSum(p), cap);
}

// ---------------------------------------------------------------------------
// OperatorSum

OperatorSum::OperatorSum(int n_sites) : n_sites_(n_sites) {
  check_site_count(n_sites);
}

OperatorSum::OperatorSum(const PauliString& p, Complex coefficient)
    : OperatorSum(p.n_sites()) {
  add(coefficient, p);
}

void OperatorSum::check_sites(int n) const {
  if (n != n_sites_) {
    throw DimensionMismatch("operator on " + std::to_string(n) +
                            " sites combined with one on " +
                            std::to_string(n_sites_) + " sites");
  }
}

OperatorSum& OperatorSum::add(Complex coefficient, const PauliString& p) {
  check_sites(p.n_sites());
  const Complex c = coefficient * p.phase();
  const PauliString bare = p.with_phase(0);
  const auto key = mask_key(bare);
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), key,
      [](const Term& t, const auto& k) { return mask_key(t.string) < k; });
  if (it != terms_.end() && mask_key(it->string) == key) {
    it->coefficient += c;
    if (std::abs(it->coefficient) < kMergeTolerance) terms_.erase(it);
  } else if (std::abs(c) >= kMergeTolerance) {
    terms_.insert(it, Term{c, bare});
  }
  return *this;
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other) {
  check_sites(other.n_sites_);
  for (const auto& t : other.terms_) add(t.coefficient, t.string);
  return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other) {
  check_sites(other.n_sites_);
  for (const auto& t : other.terms_) add(-t.coefficient, t.string);
  return *this;
}

OperatorSum& OperatorSum::operator*=(Complex factor) {
  for (auto& t : terms_) t.coefficient *= factor;
  std::erase_if(terms_, [](const Term& t) {
    return std::abs(t.coefficient) < kMergeTolerance;
  });
  return *this;
}

Complex OperatorSum::coefficient(std::uint64_t x_mask,
                                 std::uint64_t z_mask) const {
  const auto key = std::pair{x_mask, z_mask};
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), key,
      [](const Term& t, const auto& k) { return mask_key(t.string) < k; });
  if (it != terms_.end() && mask_key(it->string) == key) return it->coefficient;
  return {};
}

OperatorSum OperatorSum::adjoint() const {
  OperatorSum out(n_sites_);
  for (const auto& t : terms_) {
    out.add(std::conj(t.coefficient), t.string.adjoint());
  }
  return out;
}

bool OperatorSum::is_formally_hermitian(double tol) const {
  return max_coefficient_distance(adjoint()) <= tol;
}

double OperatorSum::norm_bound() const {
  double total = 0.0;
  for (const auto& t : terms_) total += std::abs(t.coefficient);
  return total;
}

double OperatorSum::max_coefficient_distance(const OperatorSum& other) const {
  check_sites(other.n_sites_);
  double worst = 0.0;
  for (const auto& t : terms_) {
    const Complex c =
        other.coefficient(t.string.x_mask(), t.string.z_mask());
    worst = std::max(worst, std::abs(t.coefficient - c));
  }
  for (const auto& t : other.terms_) {
    if (coefficient(t.string.x_mask(), t.string.z_mask()) == Complex{}) {
      worst = std::max(worst, std::abs(t.coefficient));
    }
  }
  return worst;
}

OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
OperatorSum operator*(Complex factor, OperatorSum a) { return a *= factor; }

OperatorSum operator*(const OperatorSum& a, const OperatorSum& b) {
  if (a.n_sites() != b.n_sites()) {
    throw DimensionMismatch("operator product across different site counts");
  }
  OperatorSum out(a.n_sites());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      out.add(ta.coefficient * tb.coefficient, ta.string * tb.string);
    }
  }
  return out;
}

OperatorSum commutator(const OperatorSum& a, const OperatorSum& b) {
  return a * b - b * a;
}

OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b) {
  return a * b + b * a;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_sites, CVector amplitudes)
    : n_sites_(n_sites), amplitudes_(std::move(amplitudes)) {
  check_site_count(n_sites);
  if (n_sites > 30 ||
      amplitudes_.size() != (Eigen::Index{1} << n_sites)) {
    throw DimensionMismatch("state vector length does not match 2^" +
                            std::to_string(n_sites));
  }
}

StateVector StateVector::basis(int n_sites, std::uint64_t index) {
  check_site_count(n_sites);
  CVector v = CVector::Zero(Eigen::Index{1} << n_sites);
  if (index >= static_cast<std::uint64_t>(v.size())) {
    throw InvalidArgument("basis index out of range");
  }
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(n_sites, std::move(v));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return StateVector(n_sites_, amplitudes_ / n);
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.n_sites_ != n_sites_) {
    throw DimensionMismatch("inner product across different site counts");
  }
  return amplitudes_.dot(other.amplitudes_);
}

// ---------------------------------------------------------------------------
// SparseOperator

SparseOperator::SparseOperator(const OperatorSum& op)
    : n_sites_(op.n_sites()),
      dim_(std::size_t{1} << op.n_sites()),
      norm_bound_(0.0),
      identity_(op.identity_coefficient()),
      real_(true) {
  if (n_sites_ > 24) {
    throw SizeLimitExceeded("matrix-free operators are limited to 24 sites");
  }
  for (const auto& term : op.terms()) {
    if (!term.string.is_identity()) norm_bound_ += std::abs(term.coefficient);
  }
  auto terms = op.terms();
  std::size_t i = 0;
  while (i < terms.size()) {
    Group group{terms[i].string.x_mask(), std::vector<Complex>(dim_)};
    for (; i < terms.size() && terms[i].string.x_mask() == group.x_mask;
         ++i) {
      const auto& t = terms[i];
      for (std::size_t s = 0; s < dim_; ++s) {
        const auto [target, amp] = t.string.act(s);
        group.column_value[s] += t.coefficient * amp;
      }
    }
    for (const Complex& v : group.column_value) {
      if (v.imag() != 0.0) {
        real_ = false;
        break;
      }
    }
    groups_.push_back(std::move(group));
  }
}

void SparseOperator::apply(std::span<const Complex> in,
                           std::span<Complex> out) const {
  if (in.size() != dim_ || out.size() != dim_) {
    throw DimensionMismatch("operator and vector dimensions differ");
  }
  std::fill(out.begin(), out.end(), Complex{});
  // Explicit real arithmetic: std::complex products carry NaN-recovery
  // branches that dominate this loop.
  const double* src = reinterpret_cast<const double*>(in.data());
  double* dst = reinterpret_cast<double*>(out.data());
  for (const auto& group : groups_) {
    const double* col = reinterpret_cast<const double*>(group.column_value.data());
    const std::uint64_t x = group.x_mask;
    for (std::size_t s = 0; s < dim_; ++s) {
      const std::size_t t = s ^ x;
      const double cr = col[2 * s], ci = col[2 * s + 1];
      const double vr = src[2 * s], vi = src[2 * s + 1];
      dst[2 * t] += cr * vr - ci * vi;
      dst[2 * t + 1] += cr * vi + ci * vr;
    }
  }
}

CVector SparseOperator::apply(const CVector& in) const {
  CVector out(in.size());
  apply(std::span<const Complex>(in.data(), static_cast<std::size_t>(in.size())),
        std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())));
  return out;
}

std::vector<std::uint64_t> SparseOperator::x_masks() const {
  std::vector<std::uint64_t> out;
  out.reserve(groups_.size());
  for (const auto& g : groups_) out.push_back(g.x_mask);
  return out;
}

CMatrix to_dense(const OperatorSum& op, int cap) {
  check_dense_cap(op.n_sites(), cap);
  const SparseOperator sparse(op);
  const auto dim = static_cast<Eigen::Index>(sparse.dimension());
  CMatrix m = CMatrix::Zero(dim, dim);
  sparse.for_each_entry([&](std::size_t row, std::size_t col, Complex v) {
    m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += v;
  });
  return m;
}

StateVector apply(const OperatorSum& op, const StateVector& v) {
  if (op.n_sites() != v.n_sites()) {
    throw DimensionMismatch("operator on " + std::to_string(op.n_sites()) +
                            " sites applied to a " +
                            std::to_string(v.n_sites()) + "-site state");
  }
  return StateVector(v.n_sites(), SparseOperator(op).apply(v.amplitudes()));
}

double commutator_norm(const OperatorSum& a, const OperatorSum& b, int cap) {
  if (a.n_sites() != b.n_sites()) {
    throw DimensionMismatch("commutator across different site counts");
  }
  check_dense_cap(a.n_sites(), cap);
  const OperatorSum c = commutator(a, b);
  if (c.empty()) return 0.0;
  if (a.n_sites() <= 10) return linalg::singular_values(to_dense(c, cap))[0];

  // Largest eigenvalue of C^dagger C, matrix-free.
  const SparseOperator op(c);
  const SparseOperator op_adj(c.adjoint());
  const linalg::MatVec gram = [&](const CVector& in, CVector& out) {
    out = op_adj.apply(op.apply(in));
  };
  const double scale = c.norm_bound() * c.norm_bound();
  linalg::LanczosOptions opts;
  opts.scale = scale;
  const linalg::MatVec negated = [&](const CVector& in, CVector& out) {
    gram(in, out);
    out = -out;
  };
  const auto top = linalg::lanczos_lowest(negated, op.dimension(), 1, opts);
  return std::sqrt(std::max(0.0, -top.values[0]));
}

}  // namespace tfim

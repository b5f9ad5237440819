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

// Pauli strings in symplectic (x-mask, z-mask) form, weighted sums of them,
// and their action on state vectors.
//
// Basis convention: site 1 is the most significant bit of a basis index and a
// cleared bit is spin-up (sigma^z = +1). A string with masks (x, z) and phase
// quadrant q stands for i^q * prod_j X_j^{x_j} Z_j^{z_j}, so Y = i X Z.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tfim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Largest chain length representable by the 64-bit masks.
inline constexpr int kMaxMaskSites = 63;
/// Default cap on dense 2^N x 2^N materialization.
inline constexpr int kDefaultDenseCap = 14;
/// Coefficients with magnitude below this are dropped when terms merge.
inline constexpr double kMergeTolerance = 1e-14;

enum class Axis { x, y, z };

/// Bit of the basis index that carries `site` (1-based).
constexpr std::uint64_t site_bit(int n_sites, int site) {
  return std::uint64_t{1} << (n_sites - site);
}

/// Mask with the bits of sites [first, last] set (1-based, inclusive).
std::uint64_t site_range_mask(int n_sites, int first, int last);

class PauliString {
 public:
  PauliString(int n_sites, std::uint64_t x_mask, std::uint64_t z_mask,
              int phase_quadrant = 0);

  static PauliString identity(int n_sites);

  int n_sites() const { return n_sites_; }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  /// q in {0,1,2,3}; the phase is i^q.
  int phase_quadrant() const { return quadrant_; }
  Complex phase() const;

  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }
  bool is_hermitian() const;
  bool commutes_with(const PauliString& other) const;
  PauliString adjoint() const;
  PauliString with_phase(int quadrant) const;

  /// Image of basis state |s>: returns (s', a) with P|s> = a |s'>.
  std::pair<std::uint64_t, Complex> act(std::uint64_t basis) const;

  /// Human-readable label such as "+i X1 Z3 Y4".
  std::string label() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_sites_;
  std::uint64_t x_mask_;
  std::uint64_t z_mask_;
  int quadrant_;
};

PauliString single_site(int n_sites, int site, Axis axis);

/// Exact group product a*b with phase from anticommutation counting.
PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

CMatrix to_dense(const PauliString& p, int cap = kDefaultDenseCap);

/// Complex-weighted sum of Pauli strings with like terms merged.
///
/// Strings are stored with phase +1; any phase carried by an added string is
/// folded into its coefficient. Terms are kept sorted by (x_mask, z_mask).
class OperatorSum {
 public:
  struct Term {
    Complex coefficient;
    PauliString string;
  };

  explicit OperatorSum(int n_sites);
  OperatorSum(const PauliString& p, Complex coefficient = 1.0);

  int n_sites() const { return n_sites_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  OperatorSum& add(Complex coefficient, const PauliString& p);
  OperatorSum& operator+=(const OperatorSum& other);
  OperatorSum& operator-=(const OperatorSum& other);
  OperatorSum& operator*=(Complex factor);

  /// Coefficient of the phase-free string with these masks (0 if absent).
  Complex coefficient(std::uint64_t x_mask, std::uint64_t z_mask) const;
  /// Coefficient of the identity string.
  Complex identity_coefficient() const { return coefficient(0, 0); }

  OperatorSum adjoint() const;
  /// True when the sum equals its adjoint term by term.
  bool is_formally_hermitian(double tol = 1e-12) const;
  /// Sum of |coefficients|; an upper bound on the spectral norm.
  double norm_bound() const;
  /// Largest |coefficient| difference against another sum.
  double max_coefficient_distance(const OperatorSum& other) const;

 private:
  void check_sites(int n) const;

  int n_sites_;
  std::vector<Term> terms_;
};

OperatorSum operator+(OperatorSum a, const OperatorSum& b);
OperatorSum operator-(OperatorSum a, const OperatorSum& b);
OperatorSum operator*(Complex factor, OperatorSum a);
/// Symbolic operator product.
OperatorSum operator*(const OperatorSum& a, const OperatorSum& b);
OperatorSum commutator(const OperatorSum& a, const OperatorSum& b);
OperatorSum anticommutator(const OperatorSum& a, const OperatorSum& b);

/// Amplitudes of a pure state in the computational basis.
class StateVector {
 public:
  StateVector(int n_sites, CVector amplitudes);

  static StateVector basis(int n_sites, std::uint64_t index);
  static StateVector all_up(int n_sites) { return basis(n_sites, 0); }

  int n_sites() const { return n_sites_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  const CVector& amplitudes() const { return amplitudes_; }

  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;
  /// <this|other>
  Complex inner(const StateVector& other) const;

 private:
  int n_sites_;
  CVector amplitudes_;
};

/// Matrix-free form of an OperatorSum: terms grouped by x-mask with the
/// column-dependent amplitude tabulated, so that (H v)[s ^ x] += c_x(s) v[s].
class SparseOperator {
 public:
  explicit SparseOperator(const OperatorSum& op);

  int n_sites() const { return n_sites_; }
  std::size_t dimension() const { return dim_; }
  double norm_bound() const { return norm_bound_; }
  Complex identity_coefficient() const { return identity_; }
  /// True if every matrix element is real.
  bool is_real() const { return real_; }

  /// out = H * in. `out` must not alias `in`.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  CVector apply(const CVector& in) const;

  /// Calls fn(row, col, value) for every structurally nonzero element.
  template <typename Fn>
  void for_each_entry(Fn&& fn) const {
    for (const auto& group : groups_) {
      for (std::size_t s = 0; s < dim_; ++s) {
        const Complex v = group.column_value[s];
        if (v != Complex{}) fn(s ^ group.x_mask, s, v);
      }
    }
  }

  /// x-masks of all groups; used for parity-conservation checks.
  std::vector<std::uint64_t> x_masks() const;

 private:
  struct Group {
    std::uint64_t x_mask;
    std::vector<Complex> column_value;
  };

  int n_sites_;
  std::size_t dim_;
  double norm_bound_;
  Complex identity_;
  bool real_;
  std::vector<Group> groups_;
};

CMatrix to_dense(const OperatorSum& op, int cap = kDefaultDenseCap);
StateVector apply(const OperatorSum& op, const StateVector& v);

/// Spectral norm of the dense commutator [a, b].
double commutator_norm(const OperatorSum& a, const OperatorSum& b,
                       int cap = kDefaultDenseCap);

}  // namespace tfim

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

// Propagators e^{-iHt} for static Hamiltonians.

#pragma once

#include "tfim/pauli.hpp"

#include <memory>
#include <vector>

namespace tfim {

inline constexpr int kDefaultDenseMaxSites = 10;

class Propagator {
 public:
  virtual ~Propagator() = default;

  virtual int n_sites() const = 0;
  /// e^{-iHt} psi.
  virtual CVector evolve(const CVector& psi, double t) const = 0;

  /// e^{-iHt} psi at every time of an ascending grid.
  virtual std::vector<CVector> evolve_grid(const CVector& psi,
                                           const std::vector<double>& times) const;
};

/// Spectral decomposition H = V diag(E) V^dagger, computed once.
class DensePropagator final : public Propagator {
 public:
  explicit DensePropagator(const OperatorSum& h,
                           double hermiticity_tolerance = 1e-10);

  int n_sites() const override { return n_sites_; }
  CVector evolve(const CVector& psi, double t) const override;
  std::vector<CVector> evolve_grid(const CVector& psi,
                                   const std::vector<double>& times) const override;

  const RVector& energies() const { return energies_; }
  const CMatrix& eigenvectors() const { return vectors_; }

 private:
  int n_sites_;
  RVector energies_;
  CMatrix vectors_;
};

/// Matrix-free Chebyshev expansion of e^{-iHt}, exact to double precision.
class ChebyshevPropagator final : public Propagator {
 public:
  explicit ChebyshevPropagator(const OperatorSum& h);

  int n_sites() const override { return op_.n_sites(); }
  CVector evolve(const CVector& psi, double t) const override;
  std::vector<CVector> evolve_grid(const CVector& psi,
                                   const std::vector<double>& times) const override;

 private:
  CVector step(const CVector& psi, double dt) const;

  SparseOperator op_;
  double shift_;  // identity coefficient
  double scale_;  // bound on the spectral radius of H - shift
};

/// Dense propagator up to `dense_max_sites` sites, Chebyshev above.
std::unique_ptr<Propagator> make_propagator(
    const OperatorSum& h, int dense_max_sites = kDefaultDenseMaxSites);

}  // namespace tfim

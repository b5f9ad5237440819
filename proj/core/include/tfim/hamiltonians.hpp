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

// Constructors for the open transverse-field Ising chain and the operators
// built on top of it: parity, the edge fermion D, the pseudospin
// perturbations, the sigma^y-field perturbation and the pulse schedule.

#pragma once

#include "tfim/pauli.hpp"

#include <vector>

namespace tfim {

struct ModelParams {
  int n_sites = 10;
  double J = 1.0;
  double g = 0.5;

  /// Throws InvalidArgument unless n_sites >= 1 and g > 0.
  void validate() const;
};

/// Effective pseudospin field strengths (kappa_x, kappa_y, kappa_z).
struct KappaVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

struct PulseSegment {
  double duration;
  OperatorSum hamiltonian;
};

/// Piecewise-constant extra Hamiltonian, evolved on top of a base operator.
class PulseSchedule {
 public:
  explicit PulseSchedule(int n_sites) : n_sites_(n_sites) {}

  void append(double duration, OperatorSum hamiltonian);

  int n_sites() const { return n_sites_; }
  const std::vector<PulseSegment>& segments() const { return segments_; }
  double total_duration() const;

 private:
  int n_sites_;
  std::vector<PulseSegment> segments_;
};

/// How the edge fermion is normalized at finite N.
enum class EdgeNormalization {
  /// prefactor sqrt((1-g^2)/(1-g^{2N})) / 2: {D, D^dagger} = 1 exactly.
  finite_size,
  /// prefactor sqrt(1-g^2) / 2: {D, D^dagger} = 1 - g^{2N}.
  asymptotic,
};

/// H0 = -J sum_j X_j X_{j+1} + g sum_j Z_j with open boundaries.
OperatorSum build_h0(const ModelParams& params);

/// Open chain with a site-dependent transverse field.
OperatorSum build_h0_inhomogeneous(double J, const std::vector<double>& fields);

/// p = prod_j (-Z_j).
PauliString build_parity(int n_sites);

/// Majorana strings a_j = prod_{l<j}(-Z_l) X_j and b_j = prod_{l<j}(-Z_l) Y_j.
PauliString majorana_a(int n_sites, int site);
PauliString majorana_b(int n_sites, int site);

/// Edge fermion D; requires 0 < g < 1.
OperatorSum build_d(const ModelParams& params,
                    EdgeNormalization norm = EdgeNormalization::finite_size);

/// H' = kx (D^dag + D) + i ky (D^dag - D) + kz p; requires 0 < g < 1.
OperatorSum build_h_prime(const ModelParams& params, const KappaVector& kappa,
                          EdgeNormalization norm = EdgeNormalization::finite_size);

/// H'_S = kx X_1 - ky prod_{l<N}(-Z_l) Y_N + kz p; g-independent.
OperatorSum build_h_simplified(int n_sites, const KappaVector& kappa);

/// H0 + sum_j gamma_j Y_j.
OperatorSum build_y_perturbed(const ModelParams& params,
                              const std::vector<double>& gamma);

/// Isospectral partner of build_y_perturbed: the open chain with fields
/// sqrt(g^2 + gamma_j^2), obtained by the site-local rotation
/// tau^z_j = eta+_j Z_j + eta-_j Y_j, eta+- = (g, gamma_j)/sqrt(g^2+gamma_j^2).
OperatorSum tau_equivalent_h0(const ModelParams& params,
                              const std::vector<double>& gamma);

/// The rotated spin component tau^axis_site written in the original sigma
/// operators.
OperatorSum tau_operator(int n_sites, int site, Axis axis, double g,
                         double gamma);

/// Single segment of duration delta carrying (pi / 2 delta) sum_l Z_l.
PulseSchedule build_pulse(int n_sites, double delta);

}  // namespace tfim

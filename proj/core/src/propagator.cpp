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

#include "tfim/propagator.hpp"

#include "tfim/error.hpp"
#include "tfim/linalg.hpp"

#include <cmath>

namespace tfim {
namespace {

void check_times(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw InvalidArgument("time is not finite");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw InvalidArgument("time grid must be strictly increasing");
    }
  }
}

void check_state(const CVector& psi, int n_sites) {
  if (psi.size() != (Eigen::Index{1} << n_sites)) {
    throw DimensionMismatch("state dimension does not match the Hamiltonian");
  }
}

// Longest Chebyshev step, in units of the scaled spectral radius.
constexpr double kMaxScaledStep = 20.0;

}  // namespace

std::vector<CVector> Propagator::evolve_grid(
    const CVector& psi, const std::vector<double>& times) const {
  check_times(times);
  std::vector<CVector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(evolve(psi, t));
  return out;
}

DensePropagator::DensePropagator(const OperatorSum& h,
                                 double hermiticity_tolerance)
    : n_sites_(h.n_sites()) {
  const CMatrix m = to_dense(h);
  const double defect = linalg::hermiticity_defect(m);
  if (defect > hermiticity_tolerance) {
    throw InvalidArgument("Hamiltonian is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
  auto eig = linalg::hermitian_eigensystem(m, true);
  energies_ = std::move(eig.values);
  vectors_ = std::move(eig.vectors);
}

CVector DensePropagator::evolve(const CVector& psi, double t) const {
  check_state(psi, n_sites_);
  if (!std::isfinite(t)) throw InvalidArgument("time is not finite");
  CVector c = vectors_.adjoint() * psi;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    c[k] *= std::polar(1.0, -energies_[k] * t);
  }
  return vectors_ * c;
}

std::vector<CVector> DensePropagator::evolve_grid(
    const CVector& psi, const std::vector<double>& times) const {
  check_state(psi, n_sites_);
  check_times(times);
  const CVector c0 = vectors_.adjoint() * psi;
  std::vector<CVector> out;
  out.reserve(times.size());
  CVector c(c0.size());
  for (double t : times) {
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      c[k] = c0[k] * std::polar(1.0, -energies_[k] * t);
    }
    out.push_back(vectors_ * c);
  }
  return out;
}

ChebyshevPropagator::ChebyshevPropagator(const OperatorSum& h)
    : op_(h), shift_(0.0), scale_(0.0) {
  if (!h.is_formally_hermitian(1e-10)) {
    throw InvalidArgument("Hamiltonian is not Hermitian");
  }
  shift_ = op_.identity_coefficient().real();
  scale_ = op_.norm_bound();
}

CVector ChebyshevPropagator::step(const CVector& psi, double dt) const {
  const double x = scale_ * dt;
  const Complex global = std::polar(1.0, -shift_ * dt);
  if (x == 0.0) return global * psi;
  const auto n = static_cast<std::size_t>(psi.size());
  // Scaled operator Hs = (H - shift) / scale with spectrum inside [-1, 1].
  auto apply_scaled = [&](const CVector& in, CVector& out) {
    op_.apply(std::span<const Complex>(in.data(), n),
              std::span<Complex>(out.data(), n));
    out -= shift_ * in;
    out /= scale_;
  };
  CVector t_prev = psi;
  CVector t_cur(psi.size());
  apply_scaled(psi, t_cur);
  CVector result = std::cyl_bessel_j(0.0, std::abs(x)) * psi;
  const Complex minus_i{0.0, dt > 0 ? -1.0 : 1.0};
  Complex power = minus_i;
  CVector t_next(psi.size());
  for (int k = 1;; ++k) {
    const double bessel = std::cyl_bessel_j(static_cast<double>(k), std::abs(x));
    result += (Complex(2.0 * bessel) * power) * t_cur;
    if (k > std::abs(x) && std::abs(bessel) < 1e-16) break;
    if (k > 10000) throw ComputationError("Chebyshev series did not converge");
    apply_scaled(t_cur, t_next);
    t_next = 2.0 * t_next - t_prev;
    std::swap(t_prev, t_cur);
    std::swap(t_cur, t_next);
    power *= minus_i;
  }
  return global * result;
}

CVector ChebyshevPropagator::evolve(const CVector& psi, double t) const {
  check_state(psi, n_sites());
  if (!std::isfinite(t)) throw InvalidArgument("time is not finite");
  if (scale_ == 0.0) return std::polar(1.0, -shift_ * t) * psi;
  const double max_dt = kMaxScaledStep / scale_;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / max_dt)));
  const double dt = t / steps;
  CVector out = psi;
  for (int s = 0; s < steps; ++s) out = step(out, dt);
  return out;
}

std::vector<CVector> ChebyshevPropagator::evolve_grid(
    const CVector& psi, const std::vector<double>& times) const {
  check_state(psi, n_sites());
  check_times(times);
  std::vector<CVector> out;
  out.reserve(times.size());
  CVector current = psi;
  double now = 0.0;
  for (double t : times) {
    current = evolve(current, t - now);
    now = t;
    out.push_back(current);
  }
  return out;
}

std::unique_ptr<Propagator> make_propagator(const OperatorSum& h,
                                            int dense_max_sites) {
  if (h.n_sites() <= dense_max_sites) {
    return std::make_unique<DensePropagator>(h);
  }
  return std::make_unique<ChebyshevPropagator>(h);
}

}  // namespace tfim

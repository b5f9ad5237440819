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

#include "tfim/hamiltonians.hpp"

#include "tfim/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tfim {
namespace {

void check_ordered_phase(const ModelParams& params) {
  params.validate();
  if (!(params.g < 1.0)) {
    throw InvalidArgument(
        "the edge operator D is only defined in the ordered phase "
        "(0 < g < 1); got g = " + std::to_string(params.g));
  }
}

void check_gamma(const ModelParams& params, const std::vector<double>& gamma) {
  params.validate();
  if (static_cast<int>(gamma.size()) != params.n_sites) {
    throw DimensionMismatch("gamma has " + std::to_string(gamma.size()) +
                            " entries for a chain of " +
                            std::to_string(params.n_sites) + " sites");
  }
}

}  // namespace

void ModelParams::validate() const {
  if (n_sites < 1 || n_sites > kMaxMaskSites) {
    throw InvalidArgument("n_sites must lie in [1, 63], got " +
                          std::to_string(n_sites));
  }
  if (!(g > 0.0) || !std::isfinite(g)) {
    throw InvalidArgument("transverse field g must be positive, got " +
                          std::to_string(g));
  }
  if (!std::isfinite(J)) throw InvalidArgument("coupling J must be finite");
}

double KappaVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

void PulseSchedule::append(double duration, OperatorSum hamiltonian) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw InvalidArgument("pulse segment durations must be positive");
  }
  if (hamiltonian.n_sites() != n_sites_) {
    throw DimensionMismatch("pulse segment acts on a different chain length");
  }
  segments_.push_back({duration, std::move(hamiltonian)});
}

double PulseSchedule::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments_) total += s.duration;
  return total;
}

OperatorSum build_h0(const ModelParams& params) {
  params.validate();
  return build_h0_inhomogeneous(
      params.J, std::vector<double>(static_cast<std::size_t>(params.n_sites),
                                    params.g));
}

OperatorSum build_h0_inhomogeneous(double J, const std::vector<double>& fields) {
  const int n = static_cast<int>(fields.size());
  OperatorSum h(n);
  for (int j = 1; j < n; ++j) {
    h.add(-J, single_site(n, j, Axis::x) * single_site(n, j + 1, Axis::x));
  }
  for (int j = 1; j <= n; ++j) {
    h.add(fields[static_cast<std::size_t>(j - 1)], single_site(n, j, Axis::z));
  }
  return h;
}

PauliString build_parity(int n_sites) {
  return PauliString(n_sites, 0, site_range_mask(n_sites, 1, n_sites),
                     2 * (n_sites % 2));
}

PauliString majorana_a(int n_sites, int site) {
  PauliString s = single_site(n_sites, site, Axis::x);
  for (int l = 1; l < site; ++l) {
    s = single_site(n_sites, l, Axis::z).with_phase(2) * s;
  }
  return s;
}

PauliString majorana_b(int n_sites, int site) {
  PauliString s = single_site(n_sites, site, Axis::y);
  for (int l = 1; l < site; ++l) {
    s = single_site(n_sites, l, Axis::z).with_phase(2) * s;
  }
  return s;
}

OperatorSum build_d(const ModelParams& params, EdgeNormalization norm) {
  check_ordered_phase(params);
  const int n = params.n_sites;
  const double g = params.g;
  double prefactor = 0.5 * std::sqrt(1.0 - g * g);
  if (norm == EdgeNormalization::finite_size) {
    prefactor /= std::sqrt(1.0 - std::pow(g, 2 * n));
  }
  const Complex i{0.0, 1.0};
  OperatorSum d(n);
  for (int j = 1; j <= n; ++j) {
    const double c = prefactor * std::pow(g, j - 1);
    d.add(c, majorana_a(n, j));
    d.add(-i * c, majorana_b(n, n - j + 1));
  }
  return d;
}

OperatorSum build_h_prime(const ModelParams& params, const KappaVector& kappa,
                          EdgeNormalization norm) {
  check_ordered_phase(params);
  const OperatorSum d = build_d(params, norm);
  const OperatorSum d_dag = d.adjoint();
  const Complex i{0.0, 1.0};
  OperatorSum h(params.n_sites);
  if (kappa.x != 0.0) h += Complex(kappa.x) * (d_dag + d);
  if (kappa.y != 0.0) h += (i * kappa.y) * (d_dag - d);
  if (kappa.z != 0.0) h.add(kappa.z, build_parity(params.n_sites));
  return h;
}

OperatorSum build_h_simplified(int n_sites, const KappaVector& kappa) {
  if (n_sites < 2) {
    throw InvalidArgument("the simplified perturbation needs n_sites >= 2");
  }
  OperatorSum h(n_sites);
  if (kappa.x != 0.0) h.add(kappa.x, single_site(n_sites, 1, Axis::x));
  if (kappa.y != 0.0) h.add(-kappa.y, majorana_b(n_sites, n_sites));
  if (kappa.z != 0.0) h.add(kappa.z, build_parity(n_sites));
  return h;
}

OperatorSum build_y_perturbed(const ModelParams& params,
                              const std::vector<double>& gamma) {
  check_gamma(params, gamma);
  OperatorSum h = build_h0(params);
  for (int j = 1; j <= params.n_sites; ++j) {
    h.add(gamma[static_cast<std::size_t>(j - 1)],
          single_site(params.n_sites, j, Axis::y));
  }
  return h;
}

OperatorSum tau_equivalent_h0(const ModelParams& params,
                              const std::vector<double>& gamma) {
  check_gamma(params, gamma);
  std::vector<double> fields;
  fields.reserve(gamma.size());
  for (double gj : gamma) fields.push_back(std::hypot(params.g, gj));
  return build_h0_inhomogeneous(params.J, fields);
}

OperatorSum tau_operator(int n_sites, int site, Axis axis, double g,
                         double gamma) {
  const double r = std::hypot(g, gamma);
  if (!(r > 0.0)) throw InvalidArgument("tau rotation needs g^2+gamma^2 > 0");
  const double eta_plus = g / r;
  const double eta_minus = gamma / r;
  const PauliString x = single_site(n_sites, site, Axis::x);
  const PauliString y = single_site(n_sites, site, Axis::y);
  const PauliString z = single_site(n_sites, site, Axis::z);
  OperatorSum out(n_sites);
  switch (axis) {
    case Axis::x:
      out.add(1.0, x);
      break;
    case Axis::y:
      out.add(eta_plus, y);
      out.add(-eta_minus, z);
      break;
    case Axis::z:
      out.add(eta_plus, z);
      out.add(eta_minus, y);
      break;
  }
  return out;
}

PulseSchedule build_pulse(int n_sites, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidArgument("pulse width delta must be positive");
  }
  const double amplitude = std::numbers::pi / (2.0 * delta);
  OperatorSum field(n_sites);
  for (int l = 1; l <= n_sites; ++l) {
    field.add(amplitude, single_site(n_sites, l, Axis::z));
  }
  PulseSchedule schedule(n_sites);
  schedule.append(delta, std::move(field));
  return schedule;
}

}  // namespace tfim

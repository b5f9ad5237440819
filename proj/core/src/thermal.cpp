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

#include "tfim/thermal.hpp"

#include "tfim/error.hpp"
#include "tfim/linalg.hpp"
#include "tfim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tfim {
namespace {

constexpr double kSupportCutoff = 1e-12;
constexpr double kNegativeTolerance = 1e-10;
constexpr const char* kDisorderedMessage =
    "the definition of the thermal state in case (i) and (ii) is absent in "
    "the disordered phase";

RVector boltzmann(const RVector& energies, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("inverse temperature must be finite and nonnegative");
  }
  const double e0 = energies.minCoeff();
  RVector w(energies.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    w[k] = std::exp(-beta * (energies[k] - e0));
  }
  return w / w.sum();
}

}  // namespace

DensityMatrix::DensityMatrix(int n_sites, CMatrix matrix)
    : n_sites_(n_sites), matrix_(std::move(matrix)) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw DimensionMismatch("density matrix dimension does not match 2^N");
  }
  if (linalg::hermiticity_defect(matrix_) > 1e-12) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > 1e-10) {
    throw InvalidArgument("density matrix trace is " + std::to_string(trace()));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
  const CVector& v = state.amplitudes();
  CMatrix m = v * v.adjoint();
  return DensityMatrix(state.n_sites(), m / m.trace().real());
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::random_phase: return "random_phase";
    case EnsembleKind::fixed_parity: return "fixed_parity";
    case EnsembleKind::canonical: return "canonical";
  }
  return "unknown";
}

EnsembleKind parse_ensemble_kind(const std::string& name) {
  if (name == "random_phase") return EnsembleKind::random_phase;
  if (name == "fixed_parity") return EnsembleKind::fixed_parity;
  if (name == "canonical") return EnsembleKind::canonical;
  throw InvalidArgument("unknown ensemble kind '" + name + "'");
}

double portable_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

AngleSample draw_angles(EnsembleKind kind, std::size_t pairs,
                        std::uint64_t seed) {
  AngleSample out;
  if (kind == EnsembleKind::canonical) return out;
  std::mt19937_64 rng(seed);
  out.theta.resize(pairs);
  out.phi.resize(pairs);
  for (std::size_t n = 0; n < pairs; ++n) {
    if (kind == EnsembleKind::random_phase) {
      out.theta[n] = std::numbers::pi * portable_uniform(rng);
      out.phi[n] = 2.0 * out.theta[n];
    } else {
      out.theta[n] = std::numbers::pi;
      out.phi[n] = 2.0 * std::numbers::pi * portable_uniform(rng);
    }
  }
  return out;
}

Ensemble build_ensemble(const SpectrumResult& h0, const EnsembleSpec& spec,
                        const GaugeOptions& gauge) {
  const Eigen::Index dim = h0.size();
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (!h0.has_vector(k)) {
      throw InvalidArgument("ensembles need every eigenvector of H0");
    }
  }
  if (spec.kind == EnsembleKind::canonical) {
    const RVector w = boltzmann(h0.eigenvalues, spec.beta);
    CMatrix v(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      v.col(k) = h0.eigenvectors.col(h0.vector_column[static_cast<std::size_t>(k)]) *
                 std::sqrt(w[k]);
    }
    CMatrix rho = v * v.adjoint();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return Ensemble{DensityMatrix(h0.n_sites, std::move(rho)), {}, 0};
  }

  if (!h0.pairs || h0.pairs->empty() || !h0.pair(1).degenerate) {
    throw InvalidArgument(kDisorderedMessage);
  }
  const auto& pairs = *h0.pairs;
  const std::size_t count = pairs.size();
  RVector energies(static_cast<Eigen::Index>(count));
  for (std::size_t n = 0; n < count; ++n) {
    energies[static_cast<Eigen::Index>(n)] =
        0.5 * (h0.eigenvalues[pairs[n].plus] + h0.eigenvalues[pairs[n].minus]);
  }
  const RVector w = boltzmann(energies, spec.beta);
  AngleSample angles = draw_angles(spec.kind, count, spec.seed);
  CMatrix phi(dim, static_cast<Eigen::Index>(count));
  int ungauged = 0;
  for (std::size_t n = 0; n < count; ++n) {
    const GaugedPair pair =
        fix_gauge(h0.state(pairs[n].plus), h0.state(pairs[n].minus), gauge);
    if (gauge.reference && !pair.gauged) ++ungauged;
    const double th = angles.theta[n];
    const Complex c_minus = -std::cos(th / 2.0) * std::polar(1.0, angles.phi[n]);
    phi.col(static_cast<Eigen::Index>(n)) =
        std::sqrt(w[static_cast<Eigen::Index>(n)]) *
        (std::sin(th / 2.0) * pair.plus.amplitudes() + c_minus * pair.minus.amplitudes());
  }
  CMatrix rho = phi * phi.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return Ensemble{DensityMatrix(h0.n_sites, std::move(rho)), std::move(angles),
                  ungauged};
}

Ensemble build_ensemble(const ModelParams& params, const EnsembleSpec& spec) {
  params.validate();
  if (spec.kind != EnsembleKind::canonical && params.g >= 1.0) {
    throw InvalidArgument(kDisorderedMessage);
  }
  SectorOptions opts;
  opts.degeneracy_tolerance = degeneracy_tolerance(params);
  const SpectrumResult h0 = sector_diagonalize(build_h0(params), opts);
  GaugeOptions gauge;
  if (spec.kind != EnsembleKind::canonical) gauge.reference = edge_reference(params);
  return build_ensemble(h0, spec, gauge);
}

EchoSeries uhlmann_echo(const DensityMatrix& rho0, const OperatorSum& h_pos,
                        const std::vector<double>& times,
                        const UhlmannOptions& options) {
  if (h_pos.n_sites() != rho0.n_sites()) {
    throw DimensionMismatch("density matrix and Hamiltonian differ in size");
  }
  return uhlmann_echo(rho0, DensePropagator(h_pos), times, options);
}

EchoSeries uhlmann_echo(const DensityMatrix& rho0, const DensePropagator& h_pos,
                        const std::vector<double>& times,
                        const UhlmannOptions& options) {
  if (h_pos.n_sites() != rho0.n_sites()) {
    throw DimensionMismatch("density matrix and Hamiltonian differ in size");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) throw InvalidArgument("time is not finite");
  }
  const auto eig = linalg::hermitian_eigensystem(rho0.matrix(), true);
  if (eig.values.size() > 0 && eig.values[0] < -kNegativeTolerance) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values[k] > kSupportCutoff) support.push_back(k);
  }
  const auto r = static_cast<Eigen::Index>(support.size());
  const Eigen::Index dim = eig.values.size();
  // Y = diag(sqrt(lambda)) W^dagger V with V the eigenvectors of H_pos; then
  // sqrt(rho0) sqrt(rho(t)) is unitarily equivalent to Y e^{-iEt} Y^dagger.
  CMatrix w_support(dim, r);
  RVector s(r);
  for (Eigen::Index j = 0; j < r; ++j) {
    w_support.col(j) = eig.vectors.col(support[static_cast<std::size_t>(j)]);
    s[j] = std::sqrt(eig.values[support[static_cast<std::size_t>(j)]]);
  }
  const CMatrix y = s.asDiagonal() * (w_support.adjoint() * h_pos.eigenvectors());
  const RVector& energies = h_pos.energies();

  std::vector<double> raw(times.size());
  parallel_for(times.size(), options.threads, [&](std::size_t i) {
    CMatrix yp = y;
    for (Eigen::Index k = 0; k < dim; ++k) {
      yp.col(k) *= std::polar(1.0, -energies[k] * times[i]);
    }
    const CMatrix a = yp * y.adjoint();
    const double nuclear = linalg::singular_values(a).sum();
    raw[i] = nuclear * nuclear;
  });
  return EchoSeries::from_raw(times, std::move(raw));
}

double overlap_formula(double theta, double phi, double kappa_x, double t) {
  const double c = std::cos(kappa_x * t);
  const double s = std::sin(kappa_x * t);
  const double st = std::sin(theta);
  const double cp = std::cos(phi);
  return c * c + s * s * st * st * cp * cp;
}

double analytic_case_le(EnsembleKind kind, double kappa_x, double t) {
  const double c = std::cos(kappa_x * t);
  switch (kind) {
    case EnsembleKind::random_phase: return 0.25 + 0.75 * c * c;
    case EnsembleKind::fixed_parity: return c * c;
    case EnsembleKind::canonical: break;
  }
  throw InvalidArgument("no closed form for the canonical ensemble");
}

std::string to_string(PostQuench choice) {
  return choice == PostQuench::exact_d ? "exact_d" : "local";
}

PostQuench parse_post_quench(const std::string& name) {
  if (name == "exact_d") return PostQuench::exact_d;
  if (name == "local") return PostQuench::local;
  throw InvalidArgument("unknown postquench choice '" + name + "'");
}

OperatorSum thermal_post_hamiltonian(const ModelParams& params, double kappa_x,
                                     PostQuench choice) {
  OperatorSum h = build_h0(params);
  if (choice == PostQuench::exact_d) {
    h += Complex(kappa_x) * edge_reference(params);
  } else {
    h.add(kappa_x, single_site(params.n_sites, 1, Axis::x));
  }
  return h;
}

std::vector<ThermalCurve> thermal_experiment(
    const std::vector<EnsembleKind>& kinds, const std::vector<double>& betas,
    const std::vector<double>& g_grid, int n_sites, double J, double kappa_x,
    PostQuench choice, const std::vector<double>& times, std::uint64_t seed,
    int threads) {
  for (double g : g_grid) {
    for (EnsembleKind kind : kinds) {
      if (kind != EnsembleKind::canonical && g >= 1.0) {
        throw InvalidArgument(kDisorderedMessage);
      }
    }
  }
  for (double beta : betas) {
    if (!(beta >= 0.0)) throw InvalidArgument("inverse temperature must be nonnegative");
  }
  std::vector<ThermalCurve> out;
  for (EnsembleKind kind : kinds) {
    for (double beta : betas) {
      for (double g : g_grid) out.push_back({kind, beta, g, {}});
    }
  }
  for (double g : g_grid) {
    const ModelParams params{n_sites, J, g};
    params.validate();
    SectorOptions opts;
    opts.degeneracy_tolerance = degeneracy_tolerance(params);
    const SpectrumResult h0 = sector_diagonalize(build_h0(params), opts);
    const DensePropagator post(thermal_post_hamiltonian(params, kappa_x, choice));
    GaugeOptions gauge;
    if (g < 1.0) gauge.reference = edge_reference(params);
    for (auto& curve : out) {
      if (curve.g != g) continue;
      const Ensemble ens = build_ensemble(h0, {curve.kind, curve.beta, seed}, gauge);
      curve.series = uhlmann_echo(ens.rho, post, times, {threads});
    }
  }
  return out;
}

}  // namespace tfim

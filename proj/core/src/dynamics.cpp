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

#include "tfim/dynamics.hpp"

#include "tfim/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tfim {
namespace {

constexpr double kOvershoot = 1e-9;

void check_normalized(const StateVector& s) {
  if (std::abs(s.norm() - 1.0) > 1e-10) {
    throw InvalidArgument("initial state is not normalized");
  }
}

void check_grid(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) {
      throw InvalidArgument("echo times must be finite and nonnegative");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw InvalidArgument("time grid must be strictly increasing");
    }
  }
}

bool is_eigenstate(const OperatorSum& h, const StateVector& psi) {
  const SparseOperator op(h);
  const CVector hpsi = op.apply(psi.amplitudes());
  const Complex e = psi.amplitudes().dot(hpsi);
  const double residual = (hpsi - e * psi.amplitudes()).norm();
  const double scale = std::max(1.0, op.norm_bound() + std::abs(op.identity_coefficient()));
  return residual <= 1e-9 * scale;
}

/// Parabolic vertex offset (in grid steps) through three equally spaced points.
double vertex_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (denom == 0.0) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -1.0, 1.0);
}

double vertex_value(double left, double mid, double right) {
  const double s = vertex_offset(left, mid, right);
  return mid + 0.25 * (right - left) * s;
}

double uniform_step(const std::vector<double>& t) {
  if (t.size() < 3) throw InvalidArgument("series is too short");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::max(1.0, dt)) {
      throw InvalidArgument("series must lie on a uniform grid");
    }
  }
  return dt;
}

}  // namespace

EchoSeries EchoSeries::from_raw(std::vector<double> times,
                                std::vector<double> raw) {
  if (times.size() != raw.size()) {
    throw DimensionMismatch("echo values and times differ in length");
  }
  for (double& v : raw) {
    if (!(v >= -kOvershoot && v <= 1.0 + kOvershoot)) {
      throw ComputationError("echo value " + std::to_string(v) +
                             " lies outside [0, 1] beyond roundoff");
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  return EchoSeries{std::move(times), std::move(raw)};
}

std::vector<double> uniform_grid(double t0, double t1, std::size_t count) {
  if (count < 2 || !(t1 > t0)) {
    throw InvalidArgument("a uniform grid needs t1 > t0 and at least 2 points");
  }
  std::vector<double> t(count);
  const double dt = (t1 - t0) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) t[i] = t0 + dt * static_cast<double>(i);
  t.back() = t1;
  return t;
}

StateVector evolve(const StateVector& state, const OperatorSum& h, double t,
                   const EvolveOptions& options) {
  if (state.n_sites() != h.n_sites()) {
    throw DimensionMismatch("state and Hamiltonian differ in site count");
  }
  const auto prop = make_propagator(h, options.dense_max_sites);
  return StateVector(state.n_sites(), prop->evolve(state.amplitudes(), t));
}

StateVector evolve_schedule(const StateVector& state, const OperatorSum& base,
                            const PulseSchedule& schedule,
                            const EvolveOptions& options) {
  if (state.n_sites() != base.n_sites() ||
      schedule.n_sites() != base.n_sites()) {
    throw DimensionMismatch("state, base and schedule differ in site count");
  }
  CVector psi = state.amplitudes();
  for (const auto& seg : schedule.segments()) {
    const auto prop = make_propagator(base + seg.hamiltonian, options.dense_max_sites);
    psi = prop->evolve(psi, seg.duration);
  }
  return StateVector(state.n_sites(), std::move(psi));
}

EchoSeries loschmidt_echo(const StateVector& state0, const OperatorSum& h_pre,
                          const OperatorSum& h_pos,
                          const std::vector<double>& times,
                          const EvolveOptions& options) {
  return loschmidt_echo(state0, h_pre, h_pos, PulseSchedule(h_pos.n_sites()),
                        times, options);
}

EchoSeries loschmidt_echo(const StateVector& state0, const OperatorSum& h_pre,
                          const OperatorSum& base,
                          const PulseSchedule& schedule,
                          const std::vector<double>& times,
                          const EvolveOptions& options) {
  check_normalized(state0);
  check_grid(times);
  const int n = state0.n_sites();
  if (h_pre.n_sites() != n || base.n_sites() != n || schedule.n_sites() != n) {
    throw DimensionMismatch("state and Hamiltonians differ in site count");
  }
  const CVector& psi = state0.amplitudes();

  // Prequench side: a pure phase when psi is an eigenstate of H_pre.
  std::vector<CVector> pre;
  if (!is_eigenstate(h_pre, state0)) {
    pre = make_propagator(h_pre, options.dense_max_sites)->evolve_grid(psi, times);
  }

  // Postquench side, stepping through segment boundaries.
  std::vector<std::unique_ptr<Propagator>> props;
  std::vector<double> bounds{0.0};
  for (const auto& seg : schedule.segments()) {
    props.push_back(make_propagator(base + seg.hamiltonian, options.dense_max_sites));
    bounds.push_back(bounds.back() + seg.duration);
  }
  std::unique_ptr<Propagator> tail;
  std::vector<double> raw;
  raw.reserve(times.size());
  CVector current = psi;
  double now = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    while (now < t) {
      const auto seg = static_cast<std::size_t>(
          std::upper_bound(bounds.begin(), bounds.end(), now) - bounds.begin());
      if (seg < bounds.size()) {
        const double next = std::min(t, bounds[seg]);
        current = props[seg - 1]->evolve(current, next - now);
        now = next;
      } else {
        if (!tail) tail = make_propagator(base, options.dense_max_sites);
        current = tail->evolve(current, t - now);
        now = t;
      }
    }
    const CVector& reference = pre.empty() ? psi : pre[i];
    raw.push_back(std::norm(current.dot(reference)));
  }
  return EchoSeries::from_raw(times, std::move(raw));
}

double le_closed_form(double kappa_x, double kappa_y, double t) {
  const double k2 = kappa_x * kappa_x + kappa_y * kappa_y;
  if (k2 == 0.0) {
    throw InvalidArgument("closed-form echo needs kappa_x or kappa_y nonzero");
  }
  const double k = std::sqrt(k2);
  return (2.0 * kappa_x * kappa_x + kappa_y * kappa_y +
          kappa_y * kappa_y * std::cos(2.0 * k * t)) /
         (2.0 * k2);
}

double le_period(double kappa_x, double kappa_y) {
  const double k = std::hypot(kappa_x, kappa_y);
  if (k == 0.0) throw InvalidArgument("period undefined for zero kappa");
  return std::numbers::pi / k;
}

double average_le(const EchoSeries& series, double T,
                  std::optional<double> period) {
  if (!(T > 0.0)) throw InvalidArgument("averaging window must be positive");
  const auto& t = series.times;
  const auto& v = series.values;
  const double eps = 1e-12 * std::max(1.0, T);
  if (t.size() < 2 || std::abs(t.front()) > eps || t.back() < T - eps) {
    throw InvalidArgument("time grid does not cover [0, T]");
  }
  double integral = 0.0;
  double max_step = 0.0;
  for (std::size_t i = 1; i < t.size() && t[i - 1] < T - eps; ++i) {
    const double hi = std::min(t[i], T);
    const double frac = (hi - t[i - 1]) / (t[i] - t[i - 1]);
    const double v_hi = v[i - 1] + frac * (v[i] - v[i - 1]);
    integral += 0.5 * (v[i - 1] + v_hi) * (hi - t[i - 1]);
    max_step = std::max(max_step, t[i] - t[i - 1]);
  }
  if (period && max_step > *period / 50.0 * (1.0 + 1e-9)) {
    throw InvalidArgument("time grid step exceeds period/50");
  }
  return integral / T;
}

double average_le_closed_form(double kappa_x, double kappa_y, double T) {
  if (!(T > 0.0)) throw InvalidArgument("averaging window must be positive");
  const double k2 = kappa_x * kappa_x + kappa_y * kappa_y;
  if (k2 == 0.0) {
    throw InvalidArgument("closed-form echo needs kappa_x or kappa_y nonzero");
  }
  const double k = std::sqrt(k2);
  return (2.0 * kappa_x * kappa_x + kappa_y * kappa_y) / (2.0 * k2) +
         kappa_y * kappa_y * std::sin(2.0 * k * T) / (4.0 * k * k2 * T);
}

double autocorrelation_period(const EchoSeries& series) {
  const double dt = uniform_step(series.times);
  const auto& v = series.values;
  const std::size_t n = v.size();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  const std::size_t max_lag = 2 * n / 3;
  std::vector<double> c(max_lag + 1, 0.0);
  for (std::size_t lag = 0; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) acc += (v[i] - mean) * (v[i + lag] - mean);
    c[lag] = acc / static_cast<double>(n - lag);
  }
  if (c[0] <= 0.0) throw ComputationError("series has no oscillation");
  std::size_t lag = 1;
  while (lag < max_lag && c[lag] > 0.0) ++lag;
  while (lag < max_lag && c[lag] <= 0.0) ++lag;
  for (; lag < max_lag; ++lag) {
    if (c[lag] >= c[lag - 1] && c[lag] >= c[lag + 1]) {
      return dt * (static_cast<double>(lag) + vertex_offset(c[lag - 1], c[lag], c[lag + 1]));
    }
  }
  throw ComputationError("no autocorrelation peak within the series");
}

double fit_period(const EchoSeries& series) {
  const double guess = autocorrelation_period(series);
  const auto& t = series.times;
  const auto n = static_cast<Eigen::Index>(t.size());
  const Eigen::Map<const RVector> y(series.values.data(), n);
  auto residual = [&](double period) {
    const double w = 2.0 * std::numbers::pi / period;
    RMatrix basis(n, 3);
    for (Eigen::Index i = 0; i < n; ++i) {
      basis(i, 0) = 1.0;
      basis(i, 1) = std::cos(w * t[static_cast<std::size_t>(i)]);
      basis(i, 2) = std::sin(w * t[static_cast<std::size_t>(i)]);
    }
    const RVector coef = basis.colPivHouseholderQr().solve(y);
    return (basis * coef - y).squaredNorm();
  };
  // Coarse scan over +-15 percent, then golden-section refinement.
  constexpr int kScan = 61;
  double lo = 0.85 * guess;
  const double step = 0.3 * guess / (kScan - 1);
  double best = lo;
  double best_r = residual(lo);
  for (int k = 1; k < kScan; ++k) {
    const double p = lo + step * k;
    const double r = residual(p);
    if (r < best_r) {
      best_r = r;
      best = p;
    }
  }
  double a = best - step;
  double b = best + step;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double rc = residual(c);
  double rd = residual(d);
  while (b - a > 1e-9 * guess) {
    if (rc < rd) {
      b = d;
      d = c;
      rd = rc;
      c = b - ratio * (b - a);
      rc = residual(c);
    } else {
      a = c;
      c = d;
      rc = rd;
      d = a + ratio * (b - a);
      rd = residual(d);
    }
  }
  return 0.5 * (a + b);
}

double series_minimum(const EchoSeries& series) {
  const auto& v = series.values;
  if (v.empty()) throw InvalidArgument("empty series");
  const auto it = std::min_element(v.begin(), v.end());
  const auto i = static_cast<std::size_t>(it - v.begin());
  if (i == 0 || i + 1 == v.size()) return *it;
  return std::min(*it, vertex_value(v[i - 1], v[i], v[i + 1]));
}

Eigen::Matrix2cd subspace_gate(const PseudospinBlock& block, double t) {
  const double b = block.B.norm();
  if (b == 0.0) throw InvalidArgument("gate undefined for |B| = 0");
  const KappaVector unit{block.B.x / b, block.B.y / b, block.B.z / b};
  const Eigen::Matrix2cd sigma = pseudospin_matrix(unit, 0.0);
  const Complex i{0.0, 1.0};
  return std::polar(1.0, -block.epsilon_n * t) *
         (std::cos(b * t) * Eigen::Matrix2cd::Identity() -
          i * std::sin(b * t) * sigma);
}

Eigen::Matrix2cd strip_global_phase(const Eigen::Matrix2cd& u,
                                    const Eigen::Matrix2cd& target) {
  const Complex tr = (target.adjoint() * u).trace();
  if (std::abs(tr) == 0.0) return u;
  return u * (std::conj(tr) / std::abs(tr));
}

Eigen::Matrix2cd hadamard_gate() {
  Eigen::Matrix2cd h;
  h << 1.0, 1.0, 1.0, -1.0;
  return h / std::sqrt(2.0);
}

Eigen::Matrix2cd phase_gate(double angle) {
  Eigen::Matrix2cd p = Eigen::Matrix2cd::Zero();
  p(0, 0) = 1.0;
  p(1, 1) = std::polar(1.0, angle);
  return p;
}

GateResult gate_fidelity(const Eigen::Matrix2cd& target,
                         const ModelParams& params, const KappaVector& kappa,
                         int n, double t, const EvolveOptions& options,
                         GaugeOptions gauge) {
  SectorOptions sector;
  sector.vectors_per_sector = n;
  sector.degeneracy_tolerance = degeneracy_tolerance(params);
  const OperatorSum h0 = build_h0(params);
  const SpectrumResult spec = sector_diagonalize(h0, sector);
  if (!gauge.reference) gauge.reference = edge_reference(params);
  const PairEntry& entry = spec.pair(n);
  const GaugedPair pair = fix_gauge(spec.state(entry.plus), spec.state(entry.minus), gauge);

  const auto prop =
      make_propagator(h0 + build_h_prime(params, kappa), options.dense_max_sites);
  const CVector* basis[2] = {&pair.plus.amplitudes(), &pair.minus.amplitudes()};
  Eigen::Matrix2cd u;
  double leakage = 0.0;
  for (int c = 0; c < 2; ++c) {
    const CVector image = prop->evolve(*basis[c], t);
    double kept = 0.0;
    for (int r = 0; r < 2; ++r) {
      u(r, c) = basis[r]->dot(image);
      kept += std::norm(u(r, c));
    }
    leakage = std::max(leakage, 1.0 - kept);
  }
  GateResult out;
  out.fidelity = std::min(1.0, std::abs((target.adjoint() * u).trace()) / 2.0);
  out.leakage = std::max(0.0, leakage);
  out.leakage_exceeded = out.leakage > 1e-3;
  out.gauged = pair.gauged;
  out.projected = strip_global_phase(u, target);
  return out;
}

EchoSeries pulse_string_check(const ModelParams& params, double kappa_x,
                              double delta, const std::vector<double>& times,
                              const EvolveOptions& options) {
  const int n = params.n_sites;
  const OperatorSum h0 = build_h0(params);
  const OperatorSum h_pre = h0 + OperatorSum(single_site(n, 1, Axis::x), kappa_x);
  const SpectrumResult ground = lowest_states(h_pre, 1, options.dense_max_sites);
  const StateVector psi = ground.state(0).normalized();
  return loschmidt_echo(psi, h_pre, h0, build_pulse(n, delta), times, options);
}

StateVector pair_ground_state(const SpectrumResult& h0, int n,
                              const OperatorSum& perturbation,
                              const GaugeOptions& gauge) {
  const PseudospinBlock block = pseudospin_block(h0, n, perturbation, gauge);
  const PairEntry& entry = h0.pair(n);
  const GaugedPair pair = fix_gauge(h0.state(entry.plus), h0.state(entry.minus), gauge);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(block.block);
  const Eigen::Vector2cd c = solver.eigenvectors().col(0);
  CVector v = c[0] * pair.plus.amplitudes() + c[1] * pair.minus.amplitudes();
  return StateVector(h0.n_sites, std::move(v)).normalized();
}

}  // namespace tfim

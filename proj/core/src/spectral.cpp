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

#include "tfim/spectral.hpp"

#include "tfim/error.hpp"
#include "tfim/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

namespace tfim {
namespace {

void check_hermitian(const CMatrix& m, double tol) {
  const double defect = linalg::hermiticity_defect(m);
  if (defect > tol) {
    throw InvalidArgument("operator is not Hermitian (defect " +
                          std::to_string(defect) + ")");
  }
}

/// Largest-magnitude component made real and positive.
CVector canonical_phase(const CVector& v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return v;
  return v * (std::conj(v[best]) / best_abs);
}

struct Sector {
  std::vector<std::uint64_t> states;
  linalg::Eigensystem eig;
};

}  // namespace

bool SpectrumResult::has_vector(Eigen::Index k) const {
  return k >= 0 && k < static_cast<Eigen::Index>(vector_column.size()) &&
         vector_column[static_cast<std::size_t>(k)] >= 0;
}

StateVector SpectrumResult::state(Eigen::Index k) const {
  if (!has_vector(k)) {
    throw InvalidArgument("no eigenvector stored for level " +
                          std::to_string(k));
  }
  return StateVector(n_sites,
                     eigenvectors.col(vector_column[static_cast<std::size_t>(k)]));
}

const PairEntry& SpectrumResult::pair(int n) const {
  if (!pairs || n < 1 || n > static_cast<int>(pairs->size())) {
    throw InvalidArgument("pair " + std::to_string(n) + " is not available");
  }
  return (*pairs)[static_cast<std::size_t>(n - 1)];
}

double degeneracy_tolerance(const ModelParams& params) {
  const double j = std::abs(params.J);
  const double split = 10.0 * j * std::pow(params.g / j, params.n_sites);
  return std::max(1e-8, std::min(split, 0.2 * std::abs(j - params.g)));
}

int basis_parity(int n_sites, std::uint64_t basis) {
  const int up = n_sites - std::popcount(basis);
  return (up % 2 == 0) ? 1 : -1;
}

double parity_expectation(const StateVector& v) {
  double acc = 0.0;
  const CVector& a = v.amplitudes();
  for (Eigen::Index s = 0; s < a.size(); ++s) {
    acc += basis_parity(v.n_sites(), static_cast<std::uint64_t>(s)) *
           std::norm(a[s]);
  }
  return acc / a.squaredNorm();
}

SpectrumResult diagonalize(const OperatorSum& h,
                           const DiagonalizeOptions& options) {
  const CMatrix m = to_dense(h, options.dense_cap);
  check_hermitian(m, options.hermiticity_tolerance);
  auto eig = linalg::hermitian_eigensystem(m, options.vectors);
  SpectrumResult out;
  out.n_sites = h.n_sites();
  out.eigenvalues = std::move(eig.values);
  out.parity_labels.assign(static_cast<std::size_t>(out.size()), 0);
  out.vector_column.assign(static_cast<std::size_t>(out.size()), -1);
  if (options.vectors) {
    out.eigenvectors = std::move(eig.vectors);
    std::iota(out.vector_column.begin(), out.vector_column.end(), 0);
  }
  return out;
}

SpectrumResult sector_diagonalize(const OperatorSum& h,
                                  const SectorOptions& options) {
  const int n = h.n_sites();
  if (n > options.dense_cap) {
    throw SizeLimitExceeded("sector diagonalization of " + std::to_string(n) +
                            " sites exceeds the cap of " +
                            std::to_string(options.dense_cap) + " sites");
  }
  double breaking = 0.0;
  for (const auto& term : h.terms()) {
    if (std::popcount(term.string.x_mask()) % 2 != 0) {
      breaking += std::abs(term.coefficient);
    }
  }
  if (breaking > options.parity_tolerance) {
    throw InvalidArgument(
        "operator does not conserve parity (breaking weight " +
        std::to_string(breaking) + "); use plain diagonalize instead");
  }

  const SparseOperator sparse(h);
  const std::size_t dim = sparse.dimension();
  std::vector<Eigen::Index> position(dim);
  Sector sectors[2];  // [0]: p = +1, [1]: p = -1
  for (std::uint64_t s = 0; s < dim; ++s) {
    auto& states = sectors[basis_parity(n, s) == 1 ? 0 : 1].states;
    position[s] = static_cast<Eigen::Index>(states.size());
    states.push_back(s);
  }

  for (int k = 0; k < 2; ++k) {
    const auto size = static_cast<Eigen::Index>(sectors[k].states.size());
    CMatrix block = CMatrix::Zero(size, size);
    const int label = k == 0 ? 1 : -1;
    sparse.for_each_entry([&](std::size_t row, std::size_t col, Complex v) {
      if (basis_parity(n, col) != label) return;
      block(position[row], position[col]) += v;
    });
    check_hermitian(block, options.hermiticity_tolerance);
    if (size == 0) continue;
    if (options.vectors && options.vectors_per_sector >= 0 &&
        options.vectors_per_sector < size) {
      // Values for the whole sector, vectors only for the lowest levels.
      auto values = linalg::hermitian_eigenvalues(block);
      auto low = options.vectors_per_sector > 0
                     ? linalg::hermitian_lowest(block, options.vectors_per_sector)
                     : linalg::Eigensystem{};
      values.head(low.values.size()) = low.values;
      sectors[k].eig.values = std::move(values);
      sectors[k].eig.vectors = std::move(low.vectors);
    } else {
      sectors[k].eig = linalg::hermitian_eigensystem(block, options.vectors);
    }
  }

  SpectrumResult out;
  out.n_sites = n;
  const auto total = static_cast<Eigen::Index>(dim);
  out.eigenvalues.resize(total);
  out.parity_labels.resize(dim);
  out.vector_column.assign(dim, -1);

  // Merge the two ascending sector lists; ties go to the + sector first.
  std::vector<Eigen::Index> index_in_result[2];
  const RVector& ep = sectors[0].eig.values;
  const RVector& em = sectors[1].eig.values;
  index_in_result[0].resize(static_cast<std::size_t>(ep.size()));
  index_in_result[1].resize(static_cast<std::size_t>(em.size()));
  Eigen::Index ip = 0, im = 0;
  for (Eigen::Index k = 0; k < total; ++k) {
    const bool take_plus = im >= em.size() || (ip < ep.size() && ep[ip] <= em[im]);
    if (take_plus) {
      out.eigenvalues[k] = ep[ip];
      out.parity_labels[static_cast<std::size_t>(k)] = 1;
      index_in_result[0][static_cast<std::size_t>(ip++)] = k;
    } else {
      out.eigenvalues[k] = em[im];
      out.parity_labels[static_cast<std::size_t>(k)] = -1;
      index_in_result[1][static_cast<std::size_t>(im++)] = k;
    }
  }

  if (options.vectors) {
    const Eigen::Index cols =
        sectors[0].eig.vectors.cols() + sectors[1].eig.vectors.cols();
    out.eigenvectors = CMatrix::Zero(total, cols);
    Eigen::Index col = 0;
    for (int k = 0; k < 2; ++k) {
      const CMatrix& vec = sectors[k].eig.vectors;
      for (Eigen::Index j = 0; j < vec.cols(); ++j, ++col) {
        for (std::size_t r = 0; r < sectors[k].states.size(); ++r) {
          out.eigenvectors(static_cast<Eigen::Index>(sectors[k].states[r]), col) =
              vec(static_cast<Eigen::Index>(r), j);
        }
        out.vector_column[static_cast<std::size_t>(
            index_in_result[k][static_cast<std::size_t>(j)])] = col;
      }
    }
  }

  std::vector<PairEntry> pairs;
  const Eigen::Index count = std::min(ep.size(), em.size());
  pairs.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index j = 0; j < count; ++j) {
    const double gap = std::abs(ep[j] - em[j]);
    pairs.push_back({static_cast<int>(j + 1),
                     index_in_result[0][static_cast<std::size_t>(j)],
                     index_in_result[1][static_cast<std::size_t>(j)], gap,
                     gap < options.degeneracy_tolerance});
  }
  out.pairs = std::move(pairs);
  return out;
}

SpectrumResult lowest_eigenpairs(const OperatorSum& h, int count,
                                 const linalg::LanczosOptions& options) {
  if (!h.is_formally_hermitian(1e-10)) {
    throw InvalidArgument("operator is not Hermitian");
  }
  const SparseOperator sparse(h);
  linalg::LanczosOptions opts = options;
  opts.scale = std::max(opts.scale, sparse.norm_bound() +
                                        std::abs(sparse.identity_coefficient()));
  const linalg::MatVec op = [&](const CVector& in, CVector& out) {
    out.resize(in.size());
    sparse.apply(std::span<const Complex>(in.data(), static_cast<std::size_t>(in.size())),
                 std::span<Complex>(out.data(), static_cast<std::size_t>(out.size())));
  };
  auto eig = linalg::lanczos_lowest(op, sparse.dimension(), count, opts);
  SpectrumResult out;
  out.n_sites = h.n_sites();
  out.eigenvalues = std::move(eig.values);
  out.eigenvectors = std::move(eig.vectors);
  out.parity_labels.assign(static_cast<std::size_t>(out.size()), 0);
  out.vector_column.resize(static_cast<std::size_t>(out.size()));
  std::iota(out.vector_column.begin(), out.vector_column.end(), 0);
  return out;
}

SpectrumResult lowest_states(const OperatorSum& h, int count,
                             int dense_max_sites) {
  if (h.n_sites() > dense_max_sites) return lowest_eigenpairs(h, count);
  const CMatrix m = to_dense(h);
  check_hermitian(m, 1e-10);
  auto eig = linalg::hermitian_lowest(m, count);
  SpectrumResult out;
  out.n_sites = h.n_sites();
  out.eigenvalues = std::move(eig.values);
  out.eigenvectors = std::move(eig.vectors);
  out.parity_labels.assign(static_cast<std::size_t>(out.size()), 0);
  out.vector_column.resize(static_cast<std::size_t>(out.size()));
  std::iota(out.vector_column.begin(), out.vector_column.end(), 0);
  return out;
}

OperatorSum edge_reference(const ModelParams& params) {
  const OperatorSum d = build_d(params);
  return d.adjoint() + d;
}

GaugedPair fix_gauge(const StateVector& plus, const StateVector& minus,
                     const GaugeOptions& options) {
  if (plus.n_sites() != minus.n_sites()) {
    throw DimensionMismatch("gauge pair spans different site counts");
  }
  const int n = plus.n_sites();
  GaugedPair out{StateVector(n, canonical_phase(plus.amplitudes())),
                 StateVector(n, canonical_phase(minus.amplitudes())),
                 Complex{}, false};
  if (!options.reference) return out;
  const Complex m = out.plus.inner(apply(*options.reference, out.minus));
  if (std::abs(m) < options.min_element) {
    out.reference_element = m;
    return out;
  }
  const Complex rotation = std::conj(m) / std::abs(m) *
                           std::polar(1.0, options.phase_offset);
  out.minus = StateVector(n, out.minus.amplitudes() * rotation);
  out.reference_element = m * rotation;
  out.gauged = true;
  return out;
}

Eigen::Matrix2cd pseudospin_matrix(const KappaVector& b, double epsilon) {
  const Complex i{0.0, 1.0};
  Eigen::Matrix2cd m;
  m << epsilon + b.z, b.x - i * b.y, b.x + i * b.y, epsilon - b.z;
  return m;
}

PseudospinBlock pseudospin_block(const SpectrumResult& h0, int n,
                                 const OperatorSum& perturbation,
                                 const GaugeOptions& gauge) {
  if (!perturbation.is_formally_hermitian(1e-10)) {
    throw InvalidArgument("perturbation is not Hermitian");
  }
  const PairEntry& entry = h0.pair(n);
  const GaugedPair pair =
      fix_gauge(h0.state(entry.plus), h0.state(entry.minus), gauge);

  const StateVector basis[2] = {pair.plus, pair.minus};
  const double energy[2] = {h0.eigenvalues[entry.plus],
                            h0.eigenvalues[entry.minus]};
  const SparseOperator v(perturbation);
  Eigen::Matrix2cd block;
  for (int c = 0; c < 2; ++c) {
    const CVector image = v.apply(basis[c].amplitudes());
    for (int r = 0; r < 2; ++r) {
      block(r, c) = basis[r].amplitudes().dot(image);
    }
    block(c, c) += energy[c];
  }

  PseudospinBlock out;
  out.n = n;
  out.block = block;
  out.degenerate = entry.degenerate;
  out.gauged = pair.gauged;
  out.epsilon_n = 0.5 * (block(0, 0).real() + block(1, 1).real());
  out.B.z = 0.5 * (block(0, 0).real() - block(1, 1).real());
  const Complex lower = 0.5 * (block(1, 0) + std::conj(block(0, 1)));
  out.B.x = lower.real();
  out.B.y = lower.imag();
  return out;
}

std::vector<SplitRow> level_split_scan(const std::vector<double>& g_grid,
                                       const KappaVector& kappa, int n_sites,
                                       int pairs, double J, int threads) {
  for (double g : g_grid) {
    if (!(g > 0.0 && g <= 2.0)) {
      throw InvalidArgument("g grid values must lie in (0, 2]");
    }
  }
  if (pairs < 1) throw InvalidArgument("at least one pair is required");
  const bool conserving = kappa.x == 0.0 && kappa.y == 0.0;
  std::vector<std::vector<SplitRow>> rows(g_grid.size());
  parallel_for(g_grid.size(), threads, [&](std::size_t i) {
    const double g = g_grid[i];
    const ModelParams params{n_sites, J, g};
    OperatorSum h = build_h0(params);
    if (n_sites >= 2) h += build_h_simplified(n_sites, kappa);
    std::vector<SplitRow>& out = rows[i];
    if (conserving) {
      SectorOptions opts;
      opts.vectors = false;
      const auto spec = sector_diagonalize(h, opts);
      const int count = std::min<int>(pairs, static_cast<int>(spec.pairs->size()));
      for (int k = 1; k <= count; ++k) {
        const auto& p = spec.pair(k);
        const double ep = spec.eigenvalues[p.plus];
        const double em = spec.eigenvalues[p.minus];
        out.push_back({g, k, 0.5 * (ep + em), std::abs(ep - em), true});
      }
    } else {
      // Assign perturbed levels to H0 pairs by their weight in each pair
      // subspace; adjacent-level pairing fails inside near-degenerate bands.
      SectorOptions sector;
      sector.vectors_per_sector = pairs;
      const auto spec0 = sector_diagonalize(build_h0(params), sector);
      const auto full = diagonalize(h);
      const int count = std::min<int>(pairs, static_cast<int>(spec0.pairs->size()));
      std::vector<bool> used(static_cast<std::size_t>(full.size()), false);
      for (int k = 1; k <= count; ++k) {
        const auto& p = spec0.pair(k);
        CMatrix basis(full.eigenvectors.rows(), 2);
        basis.col(0) = spec0.state(p.plus).amplitudes();
        basis.col(1) = spec0.state(p.minus).amplitudes();
        const RVector weight = (basis.adjoint() * full.eigenvectors).cwiseAbs2().colwise().sum();
        Eigen::Index best[2] = {-1, -1};
        for (Eigen::Index j = 0; j < weight.size(); ++j) {
          if (used[static_cast<std::size_t>(j)]) continue;
          if (best[0] < 0 || weight[j] > weight[best[0]]) {
            best[1] = best[0];
            best[0] = j;
          } else if (best[1] < 0 || weight[j] > weight[best[1]]) {
            best[1] = j;
          }
        }
        used[static_cast<std::size_t>(best[0])] = used[static_cast<std::size_t>(best[1])] = true;
        const double e0 = full.eigenvalues[best[0]];
        const double e1 = full.eigenvalues[best[1]];
        out.push_back({g, k, 0.5 * (e0 + e1), std::abs(e0 - e1), false});
      }
    }
  });
  std::vector<SplitRow> merged;
  for (auto& r : rows) merged.insert(merged.end(), r.begin(), r.end());
  return merged;
}

}  // namespace tfim

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

#include "tfim/linalg.hpp"

#include "tfim/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace tfim::linalg {
namespace {

bool is_real(const CMatrix& m) {
  const Complex* p = m.data();
  const auto n = m.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (p[i].imag() != 0.0) return false;
  }
  return true;
}

lapack_int to_lapack(Eigen::Index n) { return static_cast<lapack_int>(n); }

CVector random_vector(std::size_t dim, std::mt19937_64& rng) {
  CVector v(static_cast<Eigen::Index>(dim));
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = static_cast<double>(rng() >> 11) * kScale - 0.5;
    const double im = static_cast<double>(rng() >> 11) * kScale - 0.5;
    v[i] = Complex(re, im);
  }
  return v;
}

// Two passes of classical Gram-Schmidt against `basis` columns and `deflate`.
void orthogonalize(CVector& w, const std::vector<CVector>& basis,
                   const CMatrix& deflate) {
  for (int pass = 0; pass < 2; ++pass) {
    if (deflate.cols() > 0) w -= deflate * (deflate.adjoint() * w);
    for (const auto& v : basis) w -= v * v.dot(w);
  }
}

}  // namespace

void symmetric_eigensystem(RMatrix& m, RVector& values, bool with_vectors) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  values.resize(m.rows());
  if (m.rows() == 0) return;
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'U',
                     to_lapack(m.rows()), m.data(), to_lapack(m.rows()),
                     values.data());
  if (info != 0) {
    throw ComputationError("dsyevd failed with info " + std::to_string(info));
  }
}

Eigensystem hermitian_eigensystem(const CMatrix& m, bool with_vectors) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  Eigensystem out;
  if (is_real(m)) {
    RMatrix work = m.real();
    symmetric_eigensystem(work, out.values, with_vectors);
    if (with_vectors) out.vectors = work.cast<Complex>();
    return out;
  }
  CMatrix work = m;
  out.values.resize(m.rows());
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'U', to_lapack(m.rows()),
      reinterpret_cast<lapack_complex_double*>(work.data()),
      to_lapack(m.rows()), out.values.data());
  if (info != 0) {
    throw ComputationError("zheevd failed with info " + std::to_string(info));
  }
  if (with_vectors) out.vectors = std::move(work);
  return out;
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  return hermitian_eigensystem(m, false).values;
}

Eigensystem hermitian_lowest(const CMatrix& m, int count) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  const lapack_int n = to_lapack(m.rows());
  if (count <= 0 || count >= n) return hermitian_eigensystem(m, true);
  Eigensystem out;
  RVector w(n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  lapack_int info = 0;
  if (is_real(m)) {
    RMatrix work = m.real();
    RMatrix z(n, count);
    info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, work.data(), n,
                          0.0, 0.0, 1, count, 0.0, &found, w.data(), z.data(),
                          n, support.data());
    out.vectors = z.leftCols(found).cast<Complex>();
  } else {
    CMatrix work = m;
    CMatrix z(n, count);
    info = LAPACKE_zheevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'U', n,
        reinterpret_cast<lapack_complex_double*>(work.data()), n, 0.0, 0.0, 1,
        count, 0.0, &found, w.data(),
        reinterpret_cast<lapack_complex_double*>(z.data()), n,
        support.data());
    out.vectors = z.leftCols(found);
  }
  if (info != 0 || found != count) {
    throw ComputationError("partial eigensolver failed with info " +
                           std::to_string(info));
  }
  out.values = w.head(found);
  return out;
}

RVector singular_values(const CMatrix& m) {
  CMatrix work = m;
  const auto k = std::min(m.rows(), m.cols());
  RVector s(k);
  if (k == 0) return s;
  lapack_complex_double dummy{};
  const lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'N', to_lapack(m.rows()), to_lapack(m.cols()),
      reinterpret_cast<lapack_complex_double*>(work.data()),
      to_lapack(m.rows()), s.data(), &dummy, 1, &dummy, 1);
  if (info != 0) {
    throw ComputationError("zgesdd failed with info " + std::to_string(info));
  }
  return s;  // descending
}

double hermiticity_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("matrix is not square");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

namespace {

Eigensystem lanczos_once(const MatVec& op, std::size_t dim, int count,
                         const LanczosOptions& options,
                         const CMatrix& deflate, std::mt19937_64& rng) {
  const std::size_t free_dim = dim - static_cast<std::size_t>(deflate.cols());
  const int max_steps =
      static_cast<int>(std::min<std::size_t>(options.max_krylov, free_dim));
  if (count > max_steps) {
    throw InvalidArgument("requested more Lanczos eigenpairs than available");
  }
  const double tol = options.tolerance * std::max(options.scale, 1e-300);

  std::vector<CVector> basis;
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples basis[j] and basis[j+1]

  CVector v = random_vector(dim, rng);
  orthogonalize(v, basis, deflate);
  v.normalize();
  CVector w(static_cast<Eigen::Index>(dim));

  Eigen::SelfAdjointEigenSolver<RMatrix> ritz;
  auto solve_tridiagonal = [&](int m) {
    RMatrix t = RMatrix::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    ritz.compute(t);
  };

  for (int j = 0; j < max_steps; ++j) {
    basis.push_back(v);
    op(basis.back(), w);
    const double a = basis.back().dot(w).real();
    alpha.push_back(a);
    orthogonalize(w, basis, deflate);
    double b = w.norm();

    const int m = j + 1;
    const bool last = (m == max_steps);
    bool invariant = b <= 1e-13 * std::max(options.scale, 1.0);
    if (m >= count && (m % 8 == 0 || last || invariant)) {
      solve_tridiagonal(m);
      bool converged = true;
      for (int i = 0; i < count; ++i) {
        if (std::abs(b * ritz.eigenvectors()(m - 1, i)) > tol) {
          converged = false;
          break;
        }
      }
      if (converged || last) {
        Eigensystem out;
        out.values = ritz.eigenvalues().head(count);
        out.vectors = CMatrix::Zero(static_cast<Eigen::Index>(dim), count);
        for (int k = 0; k < m; ++k) {
          out.vectors += basis[k] * ritz.eigenvectors().row(k).head(count).cast<Complex>();
        }
        if (!converged) {
          throw ComputationError(
              "Lanczos did not converge within " + std::to_string(m) +
              " steps");
        }
        return out;
      }
    }
    if (invariant) {
      // Krylov space exhausted: continue from a fresh orthogonal direction.
      w = random_vector(dim, rng);
      orthogonalize(w, basis, deflate);
      b = 0.0;
      w.normalize();
      v = w;
    } else {
      v = w / b;
    }
    beta.push_back(b);
  }
  throw ComputationError("Lanczos exhausted the Krylov space");
}

}  // namespace

Eigensystem lanczos_lowest(const MatVec& op, std::size_t dim, int count,
                           const LanczosOptions& options,
                           const CMatrix& deflate) {
  if (count < 1) throw InvalidArgument("Lanczos count must be positive");
  std::mt19937_64 rng(options.seed);
  Eigensystem found = lanczos_once(op, dim, count, options, deflate, rng);

  // Single-vector Lanczos sees one copy of each degenerate eigenvalue; probe
  // the orthogonal complement and fold any lower vector back in.
  const double tol = 1e-9 * std::max(options.scale, 1.0);
  for (int round = 0; round < count + 2; ++round) {
    if (static_cast<std::size_t>(deflate.cols() + found.vectors.cols()) >= dim) {
      break;
    }
    CMatrix against(static_cast<Eigen::Index>(dim),
                    deflate.cols() + found.vectors.cols());
    against << deflate, found.vectors;
    const Eigensystem probe = lanczos_once(op, dim, 1, options, against, rng);
    if (probe.values[0] >= found.values[count - 1] - tol) break;

    // The complement of converged eigenvectors is invariant, so the probe is
    // itself an eigenpair: insert it and drop the highest.
    std::vector<std::pair<double, CVector>> pairs;
    for (int i = 0; i < count; ++i) {
      pairs.emplace_back(found.values[i], found.vectors.col(i));
    }
    pairs.emplace_back(probe.values[0], probe.vectors.col(0));
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (int i = 0; i < count; ++i) {
      found.values[i] = pairs[i].first;
      found.vectors.col(i) = pairs[i].second;
    }
  }
  return found;
}

}  // namespace tfim::linalg

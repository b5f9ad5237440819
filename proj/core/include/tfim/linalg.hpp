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

// Thin wrappers over LAPACK for the dense Hermitian problems the library
// needs, plus a restart-free Lanczos for extremal eigenpairs of operators
// that are only available as matrix-vector products.

#pragma once

#include "tfim/pauli.hpp"

#include <cstdint>
#include <functional>

namespace tfim::linalg {

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns; empty when not requested
};

/// Full eigendecomposition of a Hermitian matrix (upper triangle is read).
/// Uses the real symmetric driver when every element is real.
Eigensystem hermitian_eigensystem(const CMatrix& m, bool with_vectors = true);
RVector hermitian_eigenvalues(const CMatrix& m);
/// Lowest `count` eigenpairs of a dense Hermitian matrix.
Eigensystem hermitian_lowest(const CMatrix& m, int count);
/// Real symmetric variant, returning real vectors.
void symmetric_eigensystem(RMatrix& m, RVector& values, bool with_vectors);

RVector singular_values(const CMatrix& m);

/// Largest |m_ij - conj(m_ji)|.
double hermiticity_defect(const CMatrix& m);

using MatVec = std::function<void(const CVector& in, CVector& out)>;

struct LanczosOptions {
  int max_krylov = 400;
  double tolerance = 1e-11;  // residual, relative to `scale`
  double scale = 1.0;        // spectral scale used for the residual test
  std::uint64_t seed = 0x5eedULL;
};

/// Lowest `count` eigenpairs of a Hermitian operator of dimension `dim`,
/// orthogonal to the columns of `deflate` (which must be orthonormal).
/// Full reorthogonalization; throws ComputationError if the residuals do not
/// reach tolerance within max_krylov steps.
Eigensystem lanczos_lowest(const MatVec& op, std::size_t dim, int count,
                           const LanczosOptions& options = {},
                           const CMatrix& deflate = CMatrix());

}  // namespace tfim::linalg

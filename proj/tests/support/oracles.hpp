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

// Reference implementations used only by the tests. Nothing here shares code
// with the library: matrices come from explicit Kronecker products and
// exponentials from a scaled Taylor series.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix pauli(char c) {
  Matrix m = Matrix::Zero(2, 2);
  const Complex i(0.0, 1.0);
  switch (c) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: break;
  }
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

/// Label like "XIZY": leftmost character acts on site 1.
inline Matrix string_matrix(const std::string& label) {
  Matrix m = Matrix::Identity(1, 1);
  for (char c : label) m = kron(m, pauli(c));
  return m;
}

/// Single-site operator `c` on `site` (1-based) of an n-site chain.
inline Matrix site_op(int n, int site, char c) {
  std::string label(static_cast<std::size_t>(n), 'I');
  label[static_cast<std::size_t>(site - 1)] = c;
  return string_matrix(label);
}

/// -J sum X_j X_{j+1} + sum_j h_j Z_j.
inline Matrix tfim(int n, double J, const Eigen::VectorXd& fields) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix h = Matrix::Zero(dim, dim);
  for (int j = 1; j < n; ++j) h -= J * site_op(n, j, 'X') * site_op(n, j + 1, 'X');
  for (int j = 1; j <= n; ++j) h += fields[j - 1] * site_op(n, j, 'Z');
  return h;
}

inline Matrix tfim(int n, double J, double g) {
  return tfim(n, J, Eigen::VectorXd::Constant(n, g));
}

/// prod_{l<j} (-Z_l) times `end` on site j.
inline Matrix jordan_wigner(int n, int j, char end) {
  Matrix m = site_op(n, j, end);
  for (int l = 1; l < j; ++l) m = (-site_op(n, l, 'Z')) * m;
  return m;
}

/// exp(a) by scaling, a degree-18 Taylor series and repeated squaring.
inline Matrix expm(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix s = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = term * s / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

/// e^{-iHt}.
inline Matrix propagator(const Matrix& h, double t) {
  return expm(Complex(0.0, -t) * h);
}

/// 1 - ky^2/(kx^2+ky^2) sin^2(sqrt(kx^2+ky^2) t): echo of the x-polarized
/// pseudospin ground state under B = (kx, ky, 0).
inline double pseudospin_echo(double kx, double ky, double t) {
  const double k = std::hypot(kx, ky);
  const double s = std::sin(k * t);
  return 1.0 - (ky * ky) / (k * k) * s * s;
}

}  // namespace oracle

// Copyright 2026 The ebchannel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ebc/error.hpp"

/// Dense complex matrix primitives shared by every other module.
namespace ebc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds used throughout the library.
struct Tolerances {
  double psd_tol = 1e-9;
  double zero_eig_tol = 1e-8;
  double match_tol = 1e-6;
  double stochastic_tol = 1e-10;

  /// Throws InvalidArgument if any field is negative or not finite.
  void validate() const;
};

struct HermitianEigen {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Largest entry modulus; 0 for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

/// Throws DimensionMismatch unless `m` is square.
void require_square(const ComplexMatrix& m, const char* what);
/// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

/// Hermitian within psd_tol * (1 + max|entry|), entrywise against the adjoint.
bool is_hermitian(const ComplexMatrix& h, const Tolerances& tol = {});

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Throws NotHermitian.
HermitianEigen eig_hermitian(const ComplexMatrix& h, const Tolerances& tol = {});

/// lambda_min >= -psd_tol * max(1, lambda_max). Throws NotHermitian.
bool is_psd(const ComplexMatrix& h, const Tolerances& tol = {});
/// lambda_min > psd_tol * max(1, lambda_max). Throws NotHermitian.
bool is_pd(const ComplexMatrix& h, const Tolerances& tol = {});

/// Orthonormal basis (as columns, possibly zero of them) of the numerical
/// kernel of a PSD matrix: eigenvectors whose eigenvalue is below
/// zero_eig_tol * max(1, lambda_max). Throws NotPSD / NotHermitian.
ComplexMatrix kernel_psd(const ComplexMatrix& h, const Tolerances& tol = {});

/// Complex eigenvalues with algebraic multiplicity, via complex Schur
/// reduction. Throws ConvergenceFailure if the QR iteration cap is hit.
std::vector<Complex> eig_general(const ComplexMatrix& m);
std::vector<Complex> eig_general(const RealMatrix& m);

/// Number of singular values above rel_tol * sigma_max.
std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol);

/// Row-major vectorisation: coordinate i*n + j holds entry (i, j).
ComplexVector vec(const ComplexMatrix& m);
/// Inverse of vec for an n*n coordinate column.
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n);

/// Kronecker product; block (i, j) equals a(i, j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix unit E_ij = |i><j| of size n.
ComplexMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

/// |psi><psi|.
ComplexMatrix outer(const ComplexVector& psi);

}  // namespace ebc

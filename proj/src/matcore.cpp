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

#include "ebc/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ebc {

namespace {

// Hard cap on complex Schur sweeps (Eigen's default is 30 per eigenvalue).
constexpr Eigen::Index kSchurIterationsPerEigenvalue = 60;

}  // namespace

void Tolerances::validate() const {
  for (double v : {psd_tol, zero_eig_tol, match_tol, stochastic_tol}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must be finite and nonnegative");
    }
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " must be a nonempty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

bool is_hermitian(const ComplexMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols()) return false;
  const double bound = tol.psd_tol * (1.0 + max_abs(h));
  return max_abs(h - h.adjoint()) <= bound;
}

HermitianEigen eig_hermitian(const ComplexMatrix& h, const Tolerances& tol) {
  require_square(h, "Hermitian input");
  require_finite(h, "Hermitian input");
  if (!is_hermitian(h, tol)) {
    throw Error(ErrorKind::NotHermitian, "matrix differs from its adjoint beyond psd_tol");
  }
  // Symmetrise so round-off asymmetry does not leak into the solver.
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  // Eigen returns ascending order.
  HermitianEigen out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

bool is_psd(const ComplexMatrix& h, const Tolerances& tol) {
  const auto eig = eig_hermitian(h, tol);
  const double lmax = eig.eigenvalues(0);
  const double lmin = eig.eigenvalues(eig.eigenvalues.size() - 1);
  return lmin >= -tol.psd_tol * std::max(1.0, lmax);
}

bool is_pd(const ComplexMatrix& h, const Tolerances& tol) {
  const auto eig = eig_hermitian(h, tol);
  const double lmax = eig.eigenvalues(0);
  const double lmin = eig.eigenvalues(eig.eigenvalues.size() - 1);
  return lmin > tol.psd_tol * std::max(1.0, lmax);
}

ComplexMatrix kernel_psd(const ComplexMatrix& h, const Tolerances& tol) {
  const auto eig = eig_hermitian(h, tol);
  const Eigen::Index n = h.rows();
  const double lmax = eig.eigenvalues(0);
  if (eig.eigenvalues(n - 1) < -tol.psd_tol * std::max(1.0, lmax)) {
    throw Error(ErrorKind::NotPSD, "kernel_psd requires a positive semidefinite matrix");
  }
  const double cutoff = tol.zero_eig_tol * std::max(1.0, lmax);
  // Descending order puts the kernel in the trailing columns.
  Eigen::Index first = n;
  while (first > 0 && eig.eigenvalues(first - 1) < cutoff) --first;
  return eig.eigenvectors.rightCols(n - first);
}

std::vector<Complex> eig_general(const ComplexMatrix& m) {
  require_square(m, "eigenvalue input");
  require_finite(m, "eigenvalue input");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  solver.setMaxIterations(kSchurIterationsPerEigenvalue * m.rows());
  solver.compute(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "complex Schur reduction hit its iteration cap");
  }
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

std::vector<Complex> eig_general(const RealMatrix& m) {
  return eig_general(ComplexMatrix(m.cast<Complex>()));
}

std::size_t numerical_rank(const ComplexMatrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  return static_cast<std::size_t>((sv.array() > cutoff).count());
}

ComplexVector vec(const ComplexMatrix& m) {
  require_square(m, "vec input");
  const Eigen::Index n = m.rows();
  ComplexVector out(n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i * n + j) = m(i, j);
  }
  return out;
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index n) {
  if (v.size() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "unvec: length is not n*n");
  }
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = v(i * n + j);
  }
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix outer(const ComplexVector& psi) { return psi * psi.adjoint(); }

}  // namespace ebc

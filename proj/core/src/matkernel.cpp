// Copyright 2026 The qdu Authors
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

#include "qdu/matkernel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qdu {

namespace {

std::string shape_of(const ComplexMatrix& a) {
  std::ostringstream os;
  os << a.rows() << "x" << a.cols();
  return os.str();
}

}  // namespace

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const Complex z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_finite(const ComplexMatrix& a, const char* what) {
  if (!all_finite(a)) {
    throw ContractError(std::string(what) + ": matrix has non-finite entries");
  }
}

void require_square(const ComplexMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         shape_of(a));
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix mat, double tol) : mat_(std::move(mat)) {
  require_square(mat_, "UnitaryMatrix");
  require_finite(mat_, "UnitaryMatrix");
  const double residual = unitarity_residual(mat_);
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "UnitaryMatrix: ||U^dagger U - I||_F = " << residual << " exceeds " << tol;
    throw ContractError(os.str());
  }
}

UnitaryMatrix UnitaryMatrix::identity(int dim) {
  if (dim < 1) throw DimensionError("UnitaryMatrix::identity: dim must be positive");
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(mat_.adjoint()); }

UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("UnitaryMatrix product: dimension mismatch");
  return UnitaryMatrix(a.mat_ * b.mat_);
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: shape mismatch " + shape_of(a) + " vs " + shape_of(b));
  }
  // tr(a^dagger b) = sum_ij conj(a_ij) b_ij
  return (a.array().conjugate() * b.array()).sum();
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double unitarity_residual(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols())).norm();
}

double hermiticity_residual(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).norm();
}

SvdResult svd(const ComplexMatrix& a) {
  require_finite(a, "svd");
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (solver.info() != Eigen::Success) {
    // Two-sided Jacobi does not expose its sweep count.
    throw NumericError("svd: Jacobi sweeps did not converge", -1);
  }
  return SvdResult{solver.matrixU(), solver.singularValues(), solver.matrixV()};
}

double nuclear_norm(const ComplexMatrix& a) {
  require_finite(a, "nuclear_norm");
  return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues().sum();
}

PolarFactors polar(const ComplexMatrix& a) {
  require_square(a, "polar");
  SvdResult s = svd(a);
  ComplexMatrix w = s.left * s.right.adjoint();
  ComplexMatrix p = s.right * s.singular_values.cast<Complex>().asDiagonal() * s.right.adjoint();
  p = 0.5 * (p + p.adjoint()).eval();
  return PolarFactors{UnitaryMatrix(std::move(w)), std::move(p)};
}

HermitianEig hermitian_eig(const ComplexMatrix& h) {
  require_square(h, "hermitian_eig");
  require_finite(h, "hermitian_eig");
  const double residual = hermiticity_residual(h);
  if (residual > kUnitaryTol) {
    std::ostringstream os;
    os << "hermitian_eig: ||h - h^dagger||_F = " << residual << " exceeds " << kUnitaryTol;
    throw ContractError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_eig: tridiagonal QR did not converge", -1);
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = h.rows();
  HermitianEig out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  HermitianEig e = hermitian_eig(h);
  RealVector root = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * root.cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

UnitaryMatrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("haar_unitary: dim must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(dim, dim);
  // Fill row-major so the draw order is layout independent.
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    // A zero pivot has probability zero; leave the column untouched if it happens.
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return UnitaryMatrix(std::move(q));
}

ComplexVector haar_state(int dim, Rng& rng) { return haar_unitary(dim, rng).mat().col(0); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace qdu

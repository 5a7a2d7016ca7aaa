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

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdu {

using Complex = std::complex<double>;
/// Dense complex matrix; the numeric carrier for every operator in the library.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Seeded random source. One instance per thread; never shared.
using Rng = std::mt19937_64;

/// Unitarity and Hermiticity validation tolerance (Frobenius norm).
inline constexpr double kUnitaryTol = 1e-9;
/// Singular values / eigenvalues below this count as zero for rank decisions.
inline constexpr double kRankTol = 1e-12;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition on the value of an input (not only its shape) was violated.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, long iterations)
      : std::runtime_error(what), iterations_(iterations) {}
  long iterations() const noexcept { return iterations_; }

 private:
  long iterations_;
};

/// Square complex matrix with U^dagger U = I, checked at construction.
class UnitaryMatrix {
 public:
  /// Throws DimensionError for non-square input and ContractError when
  /// ||U^dagger U - I||_F exceeds `tol`.
  explicit UnitaryMatrix(ComplexMatrix mat, double tol = kUnitaryTol);

  static UnitaryMatrix identity(int dim);

  const ComplexMatrix& mat() const noexcept { return mat_; }
  int dim() const noexcept { return static_cast<int>(mat_.rows()); }
  UnitaryMatrix adjoint() const;

  /// Product of two unitaries (re-validated).
  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b);

 private:
  ComplexMatrix mat_;
};

struct PolarFactors {
  UnitaryMatrix unitary_part;
  ComplexMatrix psd_part;
};

struct SvdResult {
  ComplexMatrix left;
  RealVector singular_values;  // descending
  ComplexMatrix right;         // a = left * diag(s) * right^dagger
};

struct HermitianEig {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns are eigenvectors: h = V diag(values) V^dagger
};

bool all_finite(const ComplexMatrix& a);
void require_finite(const ComplexMatrix& a, const char* what);
void require_square(const ComplexMatrix& a, const char* what);

/// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& a);

/// ||a^dagger a - I||_F; infinity for non-square input.
double unitarity_residual(const ComplexMatrix& a);
double hermiticity_residual(const ComplexMatrix& a);

SvdResult svd(const ComplexMatrix& a);

/// Sum of singular values, tr sqrt(a^dagger a).
double nuclear_norm(const ComplexMatrix& a);

/// a = W P with W = U_svd V_svd^dagger and P = V_svd S V_svd^dagger. W is
/// unitary even when a is rank deficient and maximises |tr(V^dagger a)| over
/// all unitaries V.
PolarFactors polar(const ComplexMatrix& a);

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
/// Throws ContractError when ||h - h^dagger||_F > kUnitaryTol.
HermitianEig hermitian_eig(const ComplexMatrix& h);

/// Principal square root of a Hermitian PSD matrix; negative noise clipped.
ComplexMatrix psd_sqrt(const ComplexMatrix& h);

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// R-diagonal phase correction.
UnitaryMatrix haar_unitary(int dim, Rng& rng);

/// Haar-random unit vector (first column of a Haar unitary).
ComplexVector haar_state(int dim, Rng& rng);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli matrices in the computational basis.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace qdu

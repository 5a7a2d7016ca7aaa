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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdu/matkernel.hpp"

namespace qdu {

/// Trace-preservation tolerance on ||sum_k E_k^dagger E_k - I||_F.
inline constexpr double kTraceTol = 1e-9;

/// Raised by operations that require a trace-preserving channel.
class ValidationError : public ContractError {
 public:
  using ContractError::ContractError;
};

/// A quantum channel rho -> sum_k E_k rho E_k^dagger on an n-dimensional system.
///
/// Construction checks only shape (non-empty, square, equal dimensions, finite
/// entries). Trace preservation is a separate, report-style check so that
/// malformed channels can still be loaded and diagnosed; see validate().
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus_ops);

  int dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  std::size_t size() const noexcept { return ops_.size(); }

  static KrausChannel identity(int dim);
  static KrausChannel unitary(const UnitaryMatrix& u);

 private:
  int dim_;
  std::vector<ComplexMatrix> ops_;
};

struct ValidationReport {
  double residual;  // ||sum_k E_k^dagger E_k - I||_F
  bool passed;
};

ValidationReport validate(const KrausChannel& ch);

/// Throws ValidationError when the channel is not trace preserving.
void require_valid(const KrausChannel& ch);

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho);

/// Process matrix in the basis A_j = |m><n|, flat index j = m * dim + n.
class ChiMatrix {
 public:
  /// Throws DimensionError unless chi is dim^2 x dim^2.
  ChiMatrix(int dim, ComplexMatrix chi);

  int dim() const noexcept { return dim_; }
  const ComplexMatrix& chi() const noexcept { return chi_; }

 private:
  int dim_;
  ComplexMatrix chi_;
};

/// Operator basis element A_j for flat index j = m * dim + n.
ComplexMatrix chi_basis(int dim, int j);

ChiMatrix kraus_to_chi(const KrausChannel& ch);

/// Kraus operators from the eigenpairs of chi; eigenvalues below kRankTol are
/// dropped. Throws ContractError if chi is not Hermitian PSD within 1e-9.
KrausChannel chi_to_kraus(const ChiMatrix& x);

/// sum_{mn} chi_mn A_m rho A_n^dagger.
ComplexMatrix apply(const ChiMatrix& x, const ComplexMatrix& rho);

/// Orthogonal Kraus form. ops[i] = sum_j conj(mixing(i, j)) E_j, with
/// <ops[i], ops[k]> = delta_ik weights[i]. Operators are ordered by descending
/// weight; zero-weight rows of `mixing` have no entry in ops/weights.
struct CanonicalKraus {
  int dim;
  std::vector<ComplexMatrix> ops;
  std::vector<double> weights;
  ComplexMatrix mixing;

  KrausChannel channel() const { return KrausChannel(ops); }
};

CanonicalKraus canonicalize(const KrausChannel& ch);

/// E_k = coefficients[k] * unitaries[k].
struct MixedUnitaryForm {
  std::vector<UnitaryMatrix> unitaries;
  std::vector<Complex> coefficients;
};

inline constexpr double kMixedUnitaryTol = 1e-8;

/// Succeeds when every canonical operator satisfies F^dagger F ∝ I within
/// `tol`. Each extracted unitary has its first non-negligible entry (row-major)
/// real and positive; the phase is carried by the coefficient.
std::optional<MixedUnitaryForm> as_mixed_unitary(const CanonicalKraus& ck,
                                                 double tol = kMixedUnitaryTol);

enum class StandardKind { depolarizing, bit_flip, phase_flip, amplitude_damping };

std::string_view to_string(StandardKind kind);
/// Throws std::invalid_argument on an unknown name.
StandardKind parse_standard_kind(std::string_view name);

/// The named qubit channels with their textbook Kraus operators. Operators
/// whose coefficient is exactly zero are omitted.
KrausChannel standard_channel(StandardKind kind, double param);

/// Haar dilation: E_k = (I (x) <k|) U (I (x) |0>) for a Haar unitary U on the
/// system (x) environment space, environment index fastest.
KrausChannel random_channel(int sys_dim, int env_dim, Rng& rng);

/// Same as random_channel but with an explicit initial environment state.
KrausChannel random_channel(int sys_dim, int env_dim, const ComplexVector& env_state, Rng& rng);

/// Convex mixture sum_k p_k U_k rho U_k^dagger with `terms` Haar SU(n) unitaries
/// and uniformly distributed (flat Dirichlet) weights.
KrausChannel random_mixed_unitary(int dim, int terms, Rng& rng);

/// Random special unitary (Haar unitary with determinant phase removed).
UnitaryMatrix random_special_unitary(int dim, Rng& rng);

/// f after e, i.e. rho -> f(e(rho)), compressed to canonical form.
KrausChannel compose(const KrausChannel& f, const KrausChannel& e);

/// a (x) b acting on the joint system, Kraus set {A_j (x) B_k}.
KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b);

/// Another Kraus representation of the same channel: G_i = sum_j V_ij E_j for
/// the first columns of a Haar isometry V with `out_size` >= ch.size() rows.
KrausChannel remix(const KrausChannel& ch, int out_size, Rng& rng);

}  // namespace qdu

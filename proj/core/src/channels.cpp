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

#include "qdu/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qdu {

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus_ops) : dim_(0), ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw DimensionError("KrausChannel: at least one Kraus operator required");
  require_square(ops_.front(), "KrausChannel");
  dim_ = static_cast<int>(ops_.front().rows());
  for (const ComplexMatrix& e : ops_) {
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw DimensionError("KrausChannel: Kraus operators must all be " + std::to_string(dim_) +
                           "x" + std::to_string(dim_));
    }
    require_finite(e, "KrausChannel");
  }
}

KrausChannel KrausChannel::identity(int dim) {
  if (dim < 1) throw DimensionError("KrausChannel::identity: dim must be positive");
  return KrausChannel({ComplexMatrix::Identity(dim, dim)});
}

KrausChannel KrausChannel::unitary(const UnitaryMatrix& u) { return KrausChannel({u.mat()}); }

ValidationReport validate(const KrausChannel& ch) {
  ComplexMatrix sum = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const ComplexMatrix& e : ch.ops()) sum.noalias() += e.adjoint() * e;
  const double residual = (sum - ComplexMatrix::Identity(ch.dim(), ch.dim())).norm();
  return ValidationReport{residual, residual <= kTraceTol};
}

void require_valid(const KrausChannel& ch) {
  const ValidationReport report = validate(ch);
  if (!report.passed) {
    std::ostringstream os;
    os << "channel is not trace preserving: ||sum E^dagger E - I||_F = " << report.residual;
    throw ValidationError(os.str());
  }
}

ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.dim() || rho.cols() != ch.dim()) {
    throw DimensionError("apply: density matrix does not match channel dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(ch.dim(), ch.dim());
  for (const ComplexMatrix& e : ch.ops()) out.noalias() += e * rho * e.adjoint();
  return out;
}

ChiMatrix::ChiMatrix(int dim, ComplexMatrix chi) : dim_(dim), chi_(std::move(chi)) {
  if (dim < 1) throw DimensionError("ChiMatrix: dim must be positive");
  if (chi_.rows() != dim * dim || chi_.cols() != dim * dim) {
    throw DimensionError("ChiMatrix: expected a dim^2 x dim^2 matrix");
  }
  require_finite(chi_, "ChiMatrix");
}

ComplexMatrix chi_basis(int dim, int j) {
  if (j < 0 || j >= dim * dim) throw DimensionError("chi_basis: index out of range");
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  a(j / dim, j % dim) = 1.0;
  return a;
}

namespace {

// Coefficients of E in the |m><n| basis: c_j = E(m, n) with j = m * dim + n.
ComplexVector basis_coefficients(const ComplexMatrix& e) {
  const Eigen::Index n = e.rows();
  ComplexVector c(n * n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) c(m * n + k) = e(m, k);
  }
  return c;
}

ComplexMatrix from_coefficients(int dim, const ComplexVector& c) {
  ComplexMatrix e(dim, dim);
  for (int m = 0; m < dim; ++m) {
    for (int k = 0; k < dim; ++k) e(m, k) = c(m * dim + k);
  }
  return e;
}

}  // namespace

ChiMatrix kraus_to_chi(const KrausChannel& ch) {
  const int n2 = ch.dim() * ch.dim();
  ComplexMatrix chi = ComplexMatrix::Zero(n2, n2);
  for (const ComplexMatrix& e : ch.ops()) {
    const ComplexVector c = basis_coefficients(e);
    chi.noalias() += c * c.adjoint();
  }
  return ChiMatrix(ch.dim(), std::move(chi));
}

KrausChannel chi_to_kraus(const ChiMatrix& x) {
  const double herm = hermiticity_residual(x.chi());
  if (herm > kUnitaryTol) {
    std::ostringstream os;
    os << "chi_to_kraus: chi is not Hermitian (residual " << herm << ")";
    throw ContractError(os.str());
  }
  const HermitianEig eig = hermitian_eig(0.5 * (x.chi() + x.chi().adjoint()));
  const double min_eig = eig.values(eig.values.size() - 1);
  if (min_eig < -kUnitaryTol) {
    std::ostringstream os;
    os << "chi_to_kraus: chi is not positive semidefinite (eigenvalue " << min_eig << ")";
    throw ContractError(os.str());
  }
  std::vector<ComplexMatrix> ops;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values(k);
    if (lambda <= kRankTol) continue;
    ops.push_back(std::sqrt(lambda) * from_coefficients(x.dim(), eig.vectors.col(k)));
  }
  if (ops.empty()) throw ContractError("chi_to_kraus: chi is numerically zero");
  return KrausChannel(std::move(ops));
}

ComplexMatrix apply(const ChiMatrix& x, const ComplexMatrix& rho) {
  const int n = x.dim();
  if (rho.rows() != n || rho.cols() != n) {
    throw DimensionError("apply: density matrix does not match chi dimension");
  }
  // A_a rho A_b^dagger = rho(a_n, b_n) |a_m><b_m|
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  const int n2 = n * n;
  for (int a = 0; a < n2; ++a) {
    for (int b = 0; b < n2; ++b) {
      const Complex coef = x.chi()(a, b);
      if (coef == Complex(0.0)) continue;
      out(a / n, b / n) += coef * rho(a % n, b % n);
    }
  }
  return out;
}

CanonicalKraus canonicalize(const KrausChannel& ch) {
  const auto& ops = ch.ops();
  const Eigen::Index count = static_cast<Eigen::Index>(ops.size());
  ComplexMatrix w(count, count);
  for (Eigen::Index j = 0; j < count; ++j) {
    for (Eigen::Index k = j; k < count; ++k) {
      w(j, k) = hs_inner(ops[j], ops[k]);
      w(k, j) = std::conj(w(j, k));
    }
    w(j, j) = w(j, j).real();
  }
  // W = V D V^dagger; the mixing matrix is u = V^dagger so D = u W u^dagger.
  const HermitianEig eig = hermitian_eig(w);
  CanonicalKraus out{ch.dim(), {}, {}, eig.vectors.adjoint()};
  for (Eigen::Index i = 0; i < count; ++i) {
    const double weight = eig.values(i);
    if (weight <= kRankTol) continue;
    ComplexMatrix f = ComplexMatrix::Zero(ch.dim(), ch.dim());
    for (Eigen::Index j = 0; j < count; ++j) f += eig.vectors(j, i) * ops[j];
    out.ops.push_back(std::move(f));
    out.weights.push_back(weight);
  }
  if (out.ops.empty()) throw ContractError("canonicalize: all Kraus operators vanish");
  return out;
}

std::optional<MixedUnitaryForm> as_mixed_unitary(const CanonicalKraus& ck, double tol) {
  const int n = ck.dim;
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  MixedUnitaryForm out;
  for (const ComplexMatrix& f : ck.ops) {
    const double scale = f.squaredNorm() / n;
    if (scale <= kRankTol) return std::nullopt;
    const double residual = (f.adjoint() * f / scale - eye).norm();
    if (!(residual <= tol)) return std::nullopt;

    ComplexMatrix u = polar(f).unitary_part.mat();
    // Phase convention: first non-negligible entry in row-major order real positive.
    Complex phase(1.0, 0.0);
    for (Eigen::Index idx = 0; idx < u.size(); ++idx) {
      const Complex z = u(idx / n, idx % n);
      if (std::abs(z) > 1e-10) {
        phase = z / std::abs(z);
        break;
      }
    }
    u *= std::conj(phase);
    const Complex alpha = hs_inner(u, f) / static_cast<double>(n);
    out.unitaries.emplace_back(std::move(u));
    out.coefficients.push_back(alpha);
  }
  return out;
}

std::string_view to_string(StandardKind kind) {
  switch (kind) {
    case StandardKind::depolarizing: return "depolarizing";
    case StandardKind::bit_flip: return "bit_flip";
    case StandardKind::phase_flip: return "phase_flip";
    case StandardKind::amplitude_damping: return "amplitude_damping";
  }
  return "unknown";
}

StandardKind parse_standard_kind(std::string_view name) {
  for (StandardKind k : {StandardKind::depolarizing, StandardKind::bit_flip, StandardKind::phase_flip,
                         StandardKind::amplitude_damping}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown standard channel '" + std::string(name) + "'");
}

KrausChannel standard_channel(StandardKind kind, double param) {
  if (!(param >= 0.0 && param <= 1.0)) {
    std::ostringstream os;
    os << "standard_channel: parameter " << param << " outside [0, 1]";
    throw ContractError(os.str());
  }
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  std::vector<std::pair<double, ComplexMatrix>> terms;
  switch (kind) {
    case StandardKind::depolarizing:
      terms = {{std::sqrt(1.0 - 0.75 * param), eye},
               {std::sqrt(param / 4.0), pauli_x()},
               {std::sqrt(param / 4.0), pauli_y()},
               {std::sqrt(param / 4.0), pauli_z()}};
      break;
    case StandardKind::bit_flip:
      terms = {{std::sqrt(param), eye}, {std::sqrt(1.0 - param), pauli_x()}};
      break;
    case StandardKind::phase_flip:
      terms = {{std::sqrt(param), eye}, {std::sqrt(1.0 - param), pauli_z()}};
      break;
    case StandardKind::amplitude_damping: {
      ComplexMatrix e0 = ComplexMatrix::Zero(2, 2);
      e0(0, 0) = 1.0;
      e0(1, 1) = std::sqrt(1.0 - param);
      ComplexMatrix e1 = ComplexMatrix::Zero(2, 2);
      e1(0, 1) = 1.0;
      terms = {{1.0, e0}, {std::sqrt(param), e1}};
      break;
    }
  }
  std::vector<ComplexMatrix> ops;
  for (auto& [coef, m] : terms) {
    if (coef != 0.0) ops.push_back(coef * m);
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel(int sys_dim, int env_dim, const ComplexVector& env_state, Rng& rng) {
  if (sys_dim < 1 || env_dim < 1) throw DimensionError("random_channel: dimensions must be positive");
  if (env_state.size() != env_dim) throw DimensionError("random_channel: environment state size mismatch");
  const UnitaryMatrix total = haar_unitary(sys_dim * env_dim, rng);
  const ComplexMatrix& u = total.mat();
  std::vector<ComplexMatrix> ops;
  ops.reserve(env_dim);
  for (int k = 0; k < env_dim; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(sys_dim, sys_dim);
    for (int out = 0; out < sys_dim; ++out) {
      for (int in = 0; in < sys_dim; ++in) {
        Complex acc = 0.0;
        for (int env = 0; env < env_dim; ++env) {
          acc += u(out * env_dim + k, in * env_dim + env) * env_state(env);
        }
        e(out, in) = acc;
      }
    }
    ops.push_back(std::move(e));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel random_channel(int sys_dim, int env_dim, Rng& rng) {
  if (env_dim < 1) throw DimensionError("random_channel: dimensions must be positive");
  ComplexVector ground = ComplexVector::Zero(env_dim);
  ground(0) = 1.0;
  return random_channel(sys_dim, env_dim, ground, rng);
}

UnitaryMatrix random_special_unitary(int dim, Rng& rng) {
  const UnitaryMatrix u = haar_unitary(dim, rng);
  const Complex det = u.mat().determinant();
  const Complex root = std::pow(det, 1.0 / dim);
  return UnitaryMatrix(u.mat() / root);
}

KrausChannel random_mixed_unitary(int dim, int terms, Rng& rng) {
  if (terms < 1) throw DimensionError("random_mixed_unitary: need at least one term");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(terms);
  double total = 0.0;
  for (double& w : weights) {
    w = expo(rng);
    total += w;
  }
  std::vector<ComplexMatrix> ops;
  for (int k = 0; k < terms; ++k) {
    ops.push_back(std::sqrt(weights[k] / total) * random_special_unitary(dim, rng).mat());
  }
  return KrausChannel(std::move(ops));
}

KrausChannel compose(const KrausChannel& f, const KrausChannel& e) {
  if (f.dim() != e.dim()) throw DimensionError("compose: channel dimensions differ");
  std::vector<ComplexMatrix> products;
  products.reserve(f.size() * e.size());
  for (const ComplexMatrix& a : f.ops()) {
    for (const ComplexMatrix& b : e.ops()) products.push_back(a * b);
  }
  return canonicalize(KrausChannel(std::move(products))).channel();
}

KrausChannel tensor_product(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(a.size() * b.size());
  for (const ComplexMatrix& x : a.ops()) {
    for (const ComplexMatrix& y : b.ops()) ops.push_back(kron(x, y));
  }
  return KrausChannel(std::move(ops));
}

KrausChannel remix(const KrausChannel& ch, int out_size, Rng& rng) {
  const int count = static_cast<int>(ch.size());
  if (out_size < count) throw DimensionError("remix: output size smaller than Kraus count");
  const UnitaryMatrix v = haar_unitary(out_size, rng);
  std::vector<ComplexMatrix> ops;
  ops.reserve(out_size);
  for (int i = 0; i < out_size; ++i) {
    ComplexMatrix g = ComplexMatrix::Zero(ch.dim(), ch.dim());
    for (int j = 0; j < count; ++j) g += v.mat()(i, j) * ch.ops()[j];
    ops.push_back(std::move(g));
  }
  return KrausChannel(std::move(ops));
}

}  // namespace qdu

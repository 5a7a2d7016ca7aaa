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

#include "qdu/fidelity.hpp"

#include <algorithm>
#include <cmath>

namespace qdu {

namespace {

void require_same_dim(const KrausChannel& ch, int dim, const char* what) {
  if (ch.dim() != dim) {
    throw DimensionError(std::string(what) + ": unitary dimension " + std::to_string(dim) +
                         " does not match channel dimension " + std::to_string(ch.dim()));
  }
}

// PSD square root with eigenvalues under the rank tolerance zeroed.
ComplexMatrix truncated_sqrt(const ComplexMatrix& h) {
  const HermitianEig eig = hermitian_eig(h);
  const double cutoff = kRankTol * std::max(eig.values[0], 0.0);
  RealVector roots(eig.values.size());
  for (Eigen::Index i = 0; i < roots.size(); ++i)
    roots[i] = eig.values[i] > cutoff ? std::sqrt(eig.values[i]) : 0.0;
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

double overlap_sum(const KrausChannel& ch, const ComplexMatrix& u) {
  double total = 0.0;
  for (const ComplexMatrix& e : ch.ops()) total += std::norm(hs_inner(u, e));
  return total;
}

double process_fidelity(const KrausChannel& ch, const UnitaryMatrix& u) {
  require_same_dim(ch, u.dim(), "process_fidelity");
  const double n = ch.dim();
  return overlap_sum(ch, u.mat()) / (n * n);
}

double average_fidelity(const KrausChannel& ch, const UnitaryMatrix& u) {
  require_same_dim(ch, u.dim(), "average_fidelity");
  const double n = ch.dim();
  return (n + overlap_sum(ch, u.mat())) / (n * (n + 1.0));
}

double average_from_process(double f_pro, int dim) {
  const double n = dim;
  return (n * f_pro + 1.0) / (n + 1.0);
}

FidelityPair fidelity_pair(const KrausChannel& ch, const UnitaryMatrix& u) {
  const double f_pro = process_fidelity(ch, u);
  return FidelityPair{f_pro, average_from_process(f_pro, ch.dim()), ch.dim()};
}

double process_fidelity_chi(const KrausChannel& ch, const UnitaryMatrix& u) {
  require_same_dim(ch, u.dim(), "process_fidelity_chi");
  const double n = ch.dim();
  const ComplexMatrix a = kraus_to_chi(ch).chi() / n;
  const ComplexMatrix b = kraus_to_chi(KrausChannel::unitary(u)).chi() / n;
  const ComplexMatrix root_a = truncated_sqrt(a);
  ComplexMatrix inner = root_a * b * root_a;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const HermitianEig eig = hermitian_eig(inner);
  const double cutoff = kRankTol * std::max(eig.values[0], 0.0);
  double t = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values[i] > cutoff) t += std::sqrt(eig.values[i]);
  return t * t;
}

McEstimate average_fidelity_mc(const KrausChannel& ch, const UnitaryMatrix& u, std::size_t samples,
                               Rng& rng) {
  require_same_dim(ch, u.dim(), "average_fidelity_mc");
  if (samples == 0) throw ContractError("average_fidelity_mc: samples must be positive");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const ComplexVector psi = haar_state(ch.dim(), rng);
    const ComplexVector target = u.mat() * psi;
    // <t| E(|psi><psi|) |t> = sum_k |<t|E_k|psi>|^2
    double value = 0.0;
    for (const ComplexMatrix& e : ch.ops()) value += std::norm(target.dot(e * psi));
    sum += value;
    sum_sq += value * value;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  double std_error = 0.0;
  if (samples > 1) {
    const double var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
    std_error = std::sqrt(var / count);
  }
  return McEstimate{mean, std_error, samples};
}

}  // namespace qdu

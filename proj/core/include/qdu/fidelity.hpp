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

#include <cstddef>

#include "qdu/channels.hpp"
#include "qdu/matkernel.hpp"

namespace qdu {

struct FidelityPair {
  double f_pro;
  double f_ave;
  int dim;
};

/// sum_k |tr(U^dagger E_k)|^2, the unnormalised process-fidelity numerator.
double overlap_sum(const KrausChannel& ch, const ComplexMatrix& u);

/// sum_k |tr(U^dagger E_k)|^2 / n^2. Independent of the Kraus representation.
double process_fidelity(const KrausChannel& ch, const UnitaryMatrix& u);

/// (n + sum_k |tr(U^dagger E_k)|^2) / (n (n + 1)).
double average_fidelity(const KrausChannel& ch, const UnitaryMatrix& u);

FidelityPair fidelity_pair(const KrausChannel& ch, const UnitaryMatrix& u);

/// (n f_pro + 1) / (n + 1).
double average_from_process(double f_pro, int dim);

/// Uhlmann fidelity (tr sqrt(sqrt(A) B sqrt(A)))^2 between the trace-normalised
/// process matrices of the channel and of U. Slower route kept as a cross-check
/// of process_fidelity on small instances.
double process_fidelity_chi(const KrausChannel& ch, const UnitaryMatrix& u);

struct McEstimate {
  double mean;
  double std_error;
  std::size_t samples;
};

/// Monte Carlo estimate of the Haar average of <psi|U^dagger E(|psi><psi|) U|psi>
/// over pure input states.
McEstimate average_fidelity_mc(const KrausChannel& ch, const UnitaryMatrix& u, std::size_t samples,
                               Rng& rng);

}  // namespace qdu

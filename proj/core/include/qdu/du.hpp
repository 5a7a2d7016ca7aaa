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

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "qdu/channels.hpp"
#include "qdu/matkernel.hpp"

namespace qdu {

/// Sandwich tolerance used when checking lb <= DU <= ub.
inline constexpr double kBoundTol = 1e-9;

enum class DuMethod { exact_mixed_unitary, numerical_optimizer };

std::string_view to_string(DuMethod method);

/// Raised by du_exact_mixed_unitary when the unitaries are not mutually
/// orthogonal; callers should fall back to du_optimize.
class HypothesisError : public ContractError {
 public:
  using ContractError::ContractError;
};

struct DuResult {
  double value;          // max_U sum_k |tr(U^dagger E_k)|^2 / n^2 (best found)
  DuMethod method;
  UnitaryMatrix witness; // process_fidelity(channel, witness) == value
  long iterations;       // fixed-point steps of the winning run; 0 on the exact path
  bool converged;
};

struct BoundReport {
  double lb1;             // polar unitary of the largest-Frobenius-norm operator
  double lb1_simplified;  // (nuclear norm of that operator)^2 / n^2
  double lb2;             // polar unitary of the largest-nuclear-norm operator
  double ub;              // sum_i (nuclear norm of F_i)^2 / n^2
  std::vector<std::vector<double>> singular_values;  // per canonical operator, descending
  UnitaryMatrix witness_lb1;
  UnitaryMatrix witness_lb2;
  std::size_t lb1_index;
  std::size_t lb2_index;

  double best_lower() const { return lb1 > lb2 ? lb1 : lb2; }
};

/// Exact DU of a mixed-unitary channel with mutually orthogonal unitaries:
/// the largest |alpha_k|^2, witnessed by its unitary.
DuResult du_exact_mixed_unitary(const MixedUnitaryForm& mu);

BoundReport du_bounds(const CanonicalKraus& ck);

/// Called once per objective evaluation: (run index, iteration, objective
/// sum_k |<U, E_k>|^2). Iteration 0 is the starting point.
using ObjectiveObserver = std::function<void(int run, long iteration, double objective)>;

struct OptimizerOptions {
  int restarts = 32;              // Haar-random starting points
  bool warm_start = true;         // also start from the two lower-bound witnesses
  long max_iterations = 10000;
  double tolerance = 1e-12;       // on |f_{t+1} - f_t|
  /// Skip remaining starts once the objective meets the upper bound, which
  /// certifies the global maximum.
  bool stop_at_upper_bound = true;
  ObjectiveObserver observer;
};

/// Fixed-point ascent U <- polar(sum_k tr(E_k^dagger U) E_k) from every start;
/// returns the best objective / n^2. Warm starts run first (lb1 then lb2
/// witness), then the Haar restarts; ties go to the earliest run.
DuResult du_optimize(const KrausChannel& ch, const OptimizerOptions& options, Rng& rng);
DuResult du_optimize(const KrausChannel& ch, int restarts, Rng& rng);

struct DuOptions {
  int restarts = 32;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;  // seeds the optimizer's random starts
  double mixed_unitary_tol = kMixedUnitaryTol;
};

struct DuAnalysis {
  DuResult result;
  BoundReport bounds;
};

/// Canonicalises, takes the exact path when the channel is mixed unitary and
/// the optimizer otherwise. Bounds are always attached. Throws ValidationError
/// for non-trace-preserving input and NumericError if the result escapes
/// [max(lb1, lb2), ub] by more than kBoundTol.
DuAnalysis du(const KrausChannel& ch, const DuOptions& options = {});

}  // namespace qdu

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

#include "qdu/du.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "qdu/fidelity.hpp"

namespace qdu {

std::string_view to_string(DuMethod method) {
  switch (method) {
    case DuMethod::exact_mixed_unitary: return "exact_mixed_unitary";
    case DuMethod::numerical_optimizer: return "numerical_optimizer";
  }
  return "unknown";
}

DuResult du_exact_mixed_unitary(const MixedUnitaryForm& mu) {
  if (mu.unitaries.empty() || mu.unitaries.size() != mu.coefficients.size()) {
    throw DimensionError("du_exact_mixed_unitary: need matching, non-empty unitary/coefficient lists");
  }
  const int n = mu.unitaries.front().dim();
  for (std::size_t j = 0; j < mu.unitaries.size(); ++j) {
    if (mu.unitaries[j].dim() != n) throw DimensionError("du_exact_mixed_unitary: mixed dimensions");
    for (std::size_t k = j + 1; k < mu.unitaries.size(); ++k) {
      const double overlap = std::abs(hs_inner(mu.unitaries[j].mat(), mu.unitaries[k].mat())) / n;
      if (overlap > kMixedUnitaryTol) {
        std::ostringstream os;
        os << "du_exact_mixed_unitary: unitaries " << j << " and " << k
           << " are not orthogonal (|<U_j,U_k>|/n = " << overlap << ")";
        throw HypothesisError(os.str());
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < mu.coefficients.size(); ++k) {
    if (std::norm(mu.coefficients[k]) > std::norm(mu.coefficients[best])) best = k;
  }
  return DuResult{std::norm(mu.coefficients[best]), DuMethod::exact_mixed_unitary,
                  mu.unitaries[best], 0, true};
}

namespace {

// First index within 1e-12 of the maximum, so near-ties resolve to the lowest index.
std::size_t argmax_lowest(const std::vector<double>& values) {
  double top = values.front();
  for (double v : values) top = std::max(top, v);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= top - 1e-12) return i;
  }
  return 0;
}

}  // namespace

BoundReport du_bounds(const CanonicalKraus& ck) {
  if (ck.ops.empty()) throw DimensionError("du_bounds: empty canonical Kraus set");
  const double n2 = static_cast<double>(ck.dim) * ck.dim;
  const KrausChannel channel = ck.channel();

  std::vector<std::vector<double>> sigmas;
  std::vector<double> frobenius_sq;
  std::vector<double> nuclear;
  std::vector<ComplexMatrix> polar_unitaries;
  for (const ComplexMatrix& f : ck.ops) {
    const SvdResult s = svd(f);
    sigmas.emplace_back(s.singular_values.data(), s.singular_values.data() + s.singular_values.size());
    frobenius_sq.push_back(s.singular_values.squaredNorm());
    nuclear.push_back(s.singular_values.sum());
    polar_unitaries.push_back(s.left * s.right.adjoint());
  }

  const std::size_t i1 = argmax_lowest(frobenius_sq);
  const std::size_t i0 = argmax_lowest(nuclear);
  UnitaryMatrix u1(polar_unitaries[i1]);
  UnitaryMatrix u0(polar_unitaries[i0]);

  double ub = 0.0;
  for (double s : nuclear) ub += s * s;

  BoundReport report{overlap_sum(channel, u1.mat()) / n2,
                     nuclear[i1] * nuclear[i1] / n2,
                     overlap_sum(channel, u0.mat()) / n2,
                     ub / n2,
                     std::move(sigmas),
                     std::move(u1),
                     std::move(u0),
                     i1,
                     i0};
  return report;
}

namespace {

struct RunOutcome {
  double objective;
  ComplexMatrix unitary;
  long iterations;
  bool converged;
};

// Linearise f(U) = sum_k |<U,E_k>|^2 at U and move to the unitary maximising
// the linear term; f is convex in U, so every step is non-decreasing.
// Unitary polar factor of a 2x2 matrix: (M + e^{i arg det M} adj(M)^dagger) / (s1 + s2),
// which also gives a unitary completion when M has rank one.
Eigen::Matrix2cd polar_unitary(const Eigen::Matrix2cd& m) {
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double abs_det = std::abs(det);
  const Complex phase = abs_det > 0.0 ? det / abs_det : Complex(1.0, 0.0);
  Eigen::Matrix2cd adj_dagger;
  adj_dagger << std::conj(m(1, 1)), -std::conj(m(1, 0)), -std::conj(m(0, 1)), std::conj(m(0, 0));
  const double nuclear = std::sqrt(m.squaredNorm() + 2.0 * abs_det);
  if (!(nuclear > 0.0)) return Eigen::Matrix2cd::Identity();
  return (m + phase * adj_dagger) / nuclear;
}

ComplexMatrix polar_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return solver.matrixU() * solver.matrixV().adjoint();
}

template <typename Mat>
RunOutcome ascend(const std::vector<Mat>& ops, Mat u, const OptimizerOptions& options, int run) {
  std::vector<Complex> overlaps(ops.size());
  auto evaluate = [&](const Mat& v) {
    double f = 0.0;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      overlaps[k] = (ops[k].array().conjugate() * v.array()).sum();  // tr(E_k^dagger U)
      f += std::norm(overlaps[k]);
    }
    return f;
  };

  double f = evaluate(u);
  if (options.observer) options.observer(run, 0, f);
  Mat gradient(u.rows(), u.cols());
  for (long it = 1; it <= options.max_iterations; ++it) {
    gradient.setZero();
    for (std::size_t k = 0; k < ops.size(); ++k) gradient += overlaps[k] * ops[k];
    Mat next = polar_unitary(gradient);
    const double f_next = evaluate(next);
    if (options.observer) options.observer(run, it, f_next);
    const double delta = f_next - f;
    u = next;
    f = f_next;
    if (std::abs(delta) < options.tolerance) return RunOutcome{f, ComplexMatrix(u), it, true};
  }
  return RunOutcome{f, ComplexMatrix(u), options.max_iterations, false};
}

RunOutcome ascend_any(const std::vector<ComplexMatrix>& ops, const ComplexMatrix& start,
                      const OptimizerOptions& options, int run) {
  if (start.rows() == 2) {
    // Fixed-size path for qubits.
    std::vector<Eigen::Matrix2cd> fixed(ops.begin(), ops.end());
    return ascend<Eigen::Matrix2cd>(fixed, Eigen::Matrix2cd(start), options, run);
  }
  return ascend<ComplexMatrix>(ops, start, options, run);
}

DuResult optimize_canonical(const KrausChannel& original, const CanonicalKraus& ck,
                            const BoundReport& bounds, const OptimizerOptions& options, Rng& rng) {
  const int n = ck.dim;
  const double n2 = static_cast<double>(n) * n;
  const double certified = bounds.ub * n2 - options.tolerance;

  std::vector<ComplexMatrix> starts;
  if (options.warm_start) {
    starts.push_back(bounds.witness_lb1.mat());
    starts.push_back(bounds.witness_lb2.mat());
  }

  bool have_best = false;
  RunOutcome best{0.0, ComplexMatrix(), 0, false};
  const int total = static_cast<int>(starts.size()) + std::max(0, options.restarts);
  for (int run = 0; run < total; ++run) {
    // Random starts are drawn lazily so an early stop consumes fewer draws.
    ComplexMatrix start = run < static_cast<int>(starts.size()) ? starts[run] : haar_unitary(n, rng).mat();
    RunOutcome outcome = ascend_any(ck.ops, start, options, run);
    if (!have_best || outcome.objective > best.objective) {
      best = std::move(outcome);
      have_best = true;
    }
    if (options.stop_at_upper_bound && best.objective >= certified) break;
  }
  if (!have_best) {
    best = RunOutcome{0.0, ComplexMatrix::Identity(n, n), 0, true};
  }
  UnitaryMatrix witness(std::move(best.unitary));
  const double value = process_fidelity(original, witness);
  return DuResult{value, DuMethod::numerical_optimizer, std::move(witness), best.iterations, best.converged};
}

}  // namespace

DuResult du_optimize(const KrausChannel& ch, const OptimizerOptions& options, Rng& rng) {
  require_valid(ch);
  const CanonicalKraus ck = canonicalize(ch);
  const BoundReport bounds = du_bounds(ck);
  return optimize_canonical(ch, ck, bounds, options, rng);
}

DuResult du_optimize(const KrausChannel& ch, int restarts, Rng& rng) {
  OptimizerOptions options;
  options.restarts = restarts;
  return du_optimize(ch, options, rng);
}

DuAnalysis du(const KrausChannel& ch, const DuOptions& options) {
  require_valid(ch);
  const CanonicalKraus ck = canonicalize(ch);
  BoundReport bounds = du_bounds(ck);

  std::optional<DuResult> result;
  if (auto mu = as_mixed_unitary(ck, options.mixed_unitary_tol)) {
    try {
      result = du_exact_mixed_unitary(*mu);
    } catch (const HypothesisError&) {
      // Canonical operators are orthogonal by construction; fall through if noise says otherwise.
    }
  }
  if (!result) {
    Rng rng(options.seed);
    OptimizerOptions opt;
    opt.restarts = options.restarts;
    result = optimize_canonical(ch, ck, bounds, opt, rng);
  }

  const double lower = bounds.best_lower();
  if (result->value < lower - kBoundTol || result->value > bounds.ub + kBoundTol) {
    std::ostringstream os;
    os.precision(17);
    os << "du: value " << result->value << " outside certified interval [" << lower << ", " << bounds.ub
       << "]";
    throw NumericError(os.str(), result->iterations);
  }
  return DuAnalysis{std::move(*result), std::move(bounds)};
}

}  // namespace qdu

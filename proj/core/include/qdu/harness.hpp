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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdu/channels.hpp"
#include "qdu/du.hpp"

namespace qdu {

/// Deterministic seed for sample `index` of stream `stream` under `master`.
/// Results of the drivers below depend only on these seeds, never on the
/// number of workers.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Worker count used when a driver is given 0: hardware concurrency, at least 1.
unsigned default_workers();

// ---------------------------------------------------------------------------
// Closed forms for the standard qubit channels

/// DU of a standard qubit channel in closed form:
///   depolarizing       max(p/4, 1 - 3p/4)
///   bit/phase flip     max(p, 1 - p)
///   amplitude damping  (1 + sqrt(1 - gamma))^2 / 4
double closed_form_du(StandardKind kind, double param);

/// `points` evenly spaced values covering [0, 1] inclusive.
std::vector<double> uniform_grid(int points);

struct Table1Row {
  StandardKind kind;
  double param;
  double du;
  double closed_form;
  DuMethod method;
  double deviation;  // |du - closed_form|
};

struct Table1Report {
  std::vector<Table1Row> rows;
  double max_deviation(StandardKind kind) const;
  double max_deviation() const;
};

Table1Report run_table1(std::span<const double> param_grid, const DuOptions& options = {});

// ---------------------------------------------------------------------------
// Bound tightness over random channels

struct TightnessRecord {
  double du_value;
  double lb1;
  double lb2;
  double lb1_err;  // du - lb1
  double lb2_err;  // du - lb2
  double ub;
  std::uint64_t seed;  // per-sample seed; random_channel(n, d, Rng(seed)) reproduces the channel
};

struct TightnessOptions {
  std::size_t samples = 1000;
  int sys_dim = 2;
  int env_dim = 2;
  std::uint64_t seed = 0;
  bool stratified = false;
  double bin_width = 0.05;
  std::size_t attempt_cap = 1'000'000;  // per-bin cap on draws while stratifying
  unsigned workers = 0;
  int restarts = 32;
};

struct StratumFill {
  double lo;
  double hi;
  std::size_t count;
  std::size_t target;
};

struct TightnessResult {
  std::vector<TightnessRecord> records;  // ascending by du_value
  std::vector<StratumFill> strata;       // empty unless stratified
  std::size_t attempts = 0;              // channels drawn

  std::vector<StratumFill> underfilled() const;
  std::vector<TightnessRecord> sorted_by_ub() const;
};

/// Random Haar-dilation channels with their DU and bounds. When stratified,
/// channels are rejection-sampled into DU bins of width `bin_width` over
/// [1/n^2, 1] until each holds ceil(samples / bins) records or `attempt_cap`
/// draws have been made; bins left short are reported, not padded.
TightnessResult run_tightness(const TightnessOptions& options);

// ---------------------------------------------------------------------------
// DU distribution over random channels

struct DuHistogram {
  int env_dim;
  std::vector<double> bin_edges;  // size counts.size() + 1, spanning [1/n^2, 1]
  std::vector<std::size_t> counts;
  std::size_t sample_count;
  double mean;       // dispatcher DU
  double std_error;  // of the mean
  double mean_lb1;   // lower bound 1, the cheaper surrogate for DU
  double min_value;
  double max_value;
  std::uint64_t seed;
};

struct DistributionOptions {
  std::size_t samples = 100'000;
  std::vector<int> env_dims{2, 4};
  int sys_dim = 2;
  std::uint64_t seed = 0;
  int bins = 30;
  unsigned workers = 0;
  int restarts = 32;
};

std::vector<DuHistogram> run_distribution(const DistributionOptions& options);

// ---------------------------------------------------------------------------
// Non-Markovianity witness

struct Trajectory {
  std::vector<double> times;
  std::vector<KrausChannel> channels;
};

/// Throws ValidationError on a malformed trajectory (length mismatch,
/// non-ascending times, mixed dimensions or an invalid channel).
void require_valid(const Trajectory& traj);

struct WitnessInterval {
  std::size_t from;  // index into times
  std::size_t to;
  double increase;   // DU(t_to) - DU(t_from)
};

struct WitnessReport {
  std::vector<double> times;
  std::vector<double> du;
  std::vector<WitnessInterval> flagged;
  double threshold;

  bool non_markovian() const { return !flagged.empty(); }
  /// "non-Markovian" when an increase was seen, otherwise "inconclusive":
  /// a DU that never increases does not certify Markovian dynamics.
  std::string verdict() const;
};

WitnessReport run_witness(const Trajectory& traj, double threshold = 1e-6, const DuOptions& options = {});

/// Amplitude-damping trajectory with gamma(t) = 1 - exp(-t).
Trajectory amplitude_damping_trajectory(std::span<const double> times);

/// Amplitude-damping trajectory through the given damping parameters.
Trajectory amplitude_damping_trajectory(std::span<const double> times, std::span<const double> gammas);

}  // namespace qdu

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

#include "qdu/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace qdu {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Runs fn(i) for i in [0, count) on `workers` threads; slot i of the result
// belongs to index i, so the output does not depend on scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
  std::vector<std::optional<T>> slots(count);
  const unsigned threads = std::max(1u, std::min<unsigned>(workers == 0 ? default_workers() : workers,
                                                           static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&](unsigned worker) {
    try {
      for (std::size_t i = worker; i < count; i += threads) slots[i].emplace(fn(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (threads == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(body, w);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

DuOptions sample_du_options(std::uint64_t sample_seed, int restarts) {
  DuOptions options;
  options.restarts = restarts;
  options.seed = splitmix64(sample_seed ^ 0x6f7074696d697a65ull);
  return options;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double closed_form_du(StandardKind kind, double param) {
  switch (kind) {
    case StandardKind::depolarizing: return std::max(param / 4.0, 1.0 - 0.75 * param);
    case StandardKind::bit_flip:
    case StandardKind::phase_flip: return std::max(param, 1.0 - param);
    case StandardKind::amplitude_damping: {
      const double root = 1.0 + std::sqrt(1.0 - param);
      return root * root / 4.0;
    }
  }
  return 0.0;
}

std::vector<double> uniform_grid(int points) {
  if (points < 1) throw ContractError("uniform_grid: need at least one point");
  if (points == 1) return {0.0};
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / (points - 1);
  return grid;
}

double Table1Report::max_deviation(StandardKind kind) const {
  double worst = 0.0;
  for (const Table1Row& row : rows) {
    if (row.kind == kind) worst = std::max(worst, row.deviation);
  }
  return worst;
}

double Table1Report::max_deviation() const {
  double worst = 0.0;
  for (const Table1Row& row : rows) worst = std::max(worst, row.deviation);
  return worst;
}

Table1Report run_table1(std::span<const double> param_grid, const DuOptions& options) {
  Table1Report report;
  for (StandardKind kind : {StandardKind::depolarizing, StandardKind::bit_flip, StandardKind::phase_flip,
                            StandardKind::amplitude_damping}) {
    for (double p : param_grid) {
      const DuAnalysis analysis = du(standard_channel(kind, p), options);
      const double expected = closed_form_du(kind, p);
      report.rows.push_back(Table1Row{kind, p, analysis.result.value, expected, analysis.result.method,
                                      std::abs(analysis.result.value - expected)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<StratumFill> TightnessResult::underfilled() const {
  std::vector<StratumFill> out;
  for (const StratumFill& s : strata) {
    if (s.count < s.target) out.push_back(s);
  }
  return out;
}

std::vector<TightnessRecord> TightnessResult::sorted_by_ub() const {
  std::vector<TightnessRecord> out = records;
  std::stable_sort(out.begin(), out.end(),
                   [](const TightnessRecord& a, const TightnessRecord& b) { return a.ub < b.ub; });
  return out;
}

namespace {

constexpr std::uint64_t kTightnessStream = 0x7469676874ull;
constexpr std::size_t kStratumBatch = 512;

TightnessRecord make_record(const DuAnalysis& a, std::uint64_t seed) {
  const double v = a.result.value;
  return TightnessRecord{v, a.bounds.lb1, a.bounds.lb2, v - a.bounds.lb1, v - a.bounds.lb2, a.bounds.ub, seed};
}

void sort_by_du(std::vector<TightnessRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const TightnessRecord& a, const TightnessRecord& b) { return a.du_value < b.du_value; });
}

}  // namespace

TightnessResult run_tightness(const TightnessOptions& options) {
  if (options.samples < 1) throw ContractError("run_tightness: samples must be positive");
  const int n = options.sys_dim;
  auto seed_of = [&](std::size_t i) { return derive_seed(options.seed, kTightnessStream + options.env_dim, i); };
  auto channel_of = [&](std::uint64_t seed) {
    Rng rng(seed);
    return random_channel(n, options.env_dim, rng);
  };

  TightnessResult result;
  if (!options.stratified) {
    result.records = parallel_map<TightnessRecord>(options.samples, options.workers, [&](std::size_t i) {
      const std::uint64_t seed = seed_of(i);
      return make_record(du(channel_of(seed), sample_du_options(seed, options.restarts)), seed);
    });
    result.attempts = options.samples;
    sort_by_du(result.records);
    return result;
  }

  if (!(options.bin_width > 0.0)) throw ContractError("run_tightness: bin width must be positive");
  const double lo = 1.0 / (static_cast<double>(n) * n);
  const std::size_t bins = static_cast<std::size_t>(std::ceil((1.0 - lo) / options.bin_width - 1e-9));
  const std::size_t target = (options.samples + bins - 1) / bins;
  for (std::size_t b = 0; b < bins; ++b) {
    result.strata.push_back(StratumFill{lo + b * options.bin_width,
                                        std::min(1.0, lo + (b + 1) * options.bin_width), 0, target});
  }
  auto bin_of = [&](double v) {
    const double pos = std::floor((v - lo) / options.bin_width);
    return static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
  };
  auto all_full = [&] {
    return std::all_of(result.strata.begin(), result.strata.end(),
                       [](const StratumFill& s) { return s.count >= s.target; });
  };

  struct Screened {
    std::uint64_t seed;
    double lower;
    double upper;
  };

  std::size_t next = 0;
  while (!all_full() && next < options.attempt_cap) {
    const std::size_t batch = std::min(kStratumBatch, options.attempt_cap - next);
    // Bounds are cheap and bracket the DU; skip the optimizer when every bin the
    // DU could land in is already full.
    const std::vector<Screened> screened = parallel_map<Screened>(batch, options.workers, [&](std::size_t j) {
      const std::uint64_t seed = seed_of(next + j);
      const BoundReport b = du_bounds(canonicalize(channel_of(seed)));
      return Screened{seed, b.best_lower(), b.ub};
    });
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < batch; ++j) {
      const std::size_t first = bin_of(screened[j].lower - kBoundTol);
      const std::size_t last = bin_of(screened[j].upper + kBoundTol);
      for (std::size_t b = first; b <= last; ++b) {
        if (result.strata[b].count < target) {
          candidates.push_back(j);
          break;
        }
      }
    }
    const std::vector<DuAnalysis> analyses =
        parallel_map<DuAnalysis>(candidates.size(), options.workers, [&](std::size_t c) {
          const std::uint64_t seed = screened[candidates[c]].seed;
          return du(channel_of(seed), sample_du_options(seed, options.restarts));
        });
    std::size_t consumed = batch;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const DuAnalysis& a = analyses[c];
      StratumFill& stratum = result.strata[bin_of(a.result.value)];
      if (stratum.count < target) {
        ++stratum.count;
        result.records.push_back(make_record(a, screened[candidates[c]].seed));
        if (all_full()) {
          consumed = candidates[c] + 1;
          break;
        }
      }
    }
    next += consumed;
  }
  result.attempts = next;
  sort_by_du(result.records);
  return result;
}

// ---------------------------------------------------------------------------

std::vector<DuHistogram> run_distribution(const DistributionOptions& options) {
  if (options.samples < 1) throw ContractError("run_distribution: samples must be positive");
  if (options.bins < 1) throw ContractError("run_distribution: bins must be positive");
  const int n = options.sys_dim;
  const double lo = 1.0 / (static_cast<double>(n) * n);
  const double width = (1.0 - lo) / options.bins;

  struct Sample {
    double du;
    double lb1;
  };

  std::vector<DuHistogram> out;
  for (int d : options.env_dims) {
    const std::vector<Sample> samples = parallel_map<Sample>(options.samples, options.workers, [&](std::size_t i) {
      const std::uint64_t seed = derive_seed(options.seed, static_cast<std::uint64_t>(d), i);
      Rng rng(seed);
      const DuAnalysis a = du(random_channel(n, d, rng), sample_du_options(seed, options.restarts));
      return Sample{a.result.value, a.bounds.lb1};
    });

    DuHistogram h{d, {}, std::vector<std::size_t>(options.bins, 0), samples.size(), 0.0, 0.0, 0.0, 1.0, 0.0,
                  options.seed};
    for (int b = 0; b <= options.bins; ++b) h.bin_edges.push_back(b == options.bins ? 1.0 : lo + b * width);
    double sum = 0.0;
    double sum_sq = 0.0;
    double sum_lb1 = 0.0;
    for (const Sample& s : samples) {
      const double pos = std::floor((s.du - lo) / width);
      ++h.counts[static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(options.bins - 1)))];
      sum += s.du;
      sum_sq += s.du * s.du;
      sum_lb1 += s.lb1;
      h.min_value = std::min(h.min_value, s.du);
      h.max_value = std::max(h.max_value, s.du);
    }
    const double count = static_cast<double>(samples.size());
    h.mean = sum / count;
    h.mean_lb1 = sum_lb1 / count;
    if (samples.size() > 1) {
      const double var = std::max(0.0, (sum_sq - count * h.mean * h.mean) / (count - 1.0));
      h.std_error = std::sqrt(var / count);
    }
    out.push_back(std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------

void require_valid(const Trajectory& traj) {
  if (traj.times.empty()) throw ValidationError("trajectory: no time points");
  if (traj.times.size() != traj.channels.size()) {
    throw ValidationError("trajectory: times and channels have different lengths");
  }
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    if (!(traj.times[i] > traj.times[i - 1])) throw ValidationError("trajectory: times must be strictly ascending");
  }
  const int dim = traj.channels.front().dim();
  for (std::size_t i = 0; i < traj.channels.size(); ++i) {
    if (traj.channels[i].dim() != dim) throw ValidationError("trajectory: channels have different dimensions");
    const ValidationReport report = validate(traj.channels[i]);
    if (!report.passed) {
      std::ostringstream os;
      os << "trajectory: channel " << i << " is not trace preserving (residual " << report.residual << ")";
      throw ValidationError(os.str());
    }
  }
}

std::string WitnessReport::verdict() const { return non_markovian() ? "non-Markovian" : "inconclusive"; }

WitnessReport run_witness(const Trajectory& traj, double threshold, const DuOptions& options) {
  require_valid(traj);
  WitnessReport report{traj.times, {}, {}, threshold};
  for (const KrausChannel& ch : traj.channels) report.du.push_back(du(ch, options).result.value);
  for (std::size_t i = 0; i + 1 < report.du.size(); ++i) {
    const double increase = report.du[i + 1] - report.du[i];
    if (increase > threshold) report.flagged.push_back(WitnessInterval{i, i + 1, increase});
  }
  return report;
}

Trajectory amplitude_damping_trajectory(std::span<const double> times) {
  std::vector<double> gammas;
  for (double t : times) gammas.push_back(1.0 - std::exp(-t));
  return amplitude_damping_trajectory(times, gammas);
}

Trajectory amplitude_damping_trajectory(std::span<const double> times, std::span<const double> gammas) {
  if (times.size() != gammas.size()) throw DimensionError("amplitude_damping_trajectory: length mismatch");
  Trajectory traj;
  for (std::size_t i = 0; i < times.size(); ++i) {
    traj.times.push_back(times[i]);
    traj.channels.push_back(standard_channel(StandardKind::amplitude_damping, gammas[i]));
  }
  return traj;
}

}  // namespace qdu

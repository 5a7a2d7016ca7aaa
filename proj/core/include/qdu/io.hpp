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

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

#include "qdu/channels.hpp"
#include "qdu/du.hpp"
#include "qdu/harness.hpp"

namespace qdu {

/// Malformed or unreadable input file. The message carries line context
/// when the failure is a JSON syntax error.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Channel JSON:
//   { "dim": n, "kraus": [ [ [ [re, im], ... ] per row ] per operator ] }
// or
//   { "standard": "<depolarizing|bit_flip|phase_flip|amplitude_damping>", "param": x }
KrausChannel parse_channel(const std::string& text);
KrausChannel load_channel(const std::filesystem::path& path);
std::string channel_to_json(const KrausChannel& ch, int indent = -1);

// Trajectory JSON: { "dim": n, "times": [...], "channels": [channel object per time] }
Trajectory parse_trajectory(const std::string& text);
Trajectory load_trajectory(const std::filesystem::path& path);
std::string trajectory_to_json(const Trajectory& traj, int indent = -1);

std::string du_analysis_to_json(const DuAnalysis& analysis, int indent = 2);

/// Header `du,lb1,lb2,lb1_err,lb2_err,ub,seed`, one row per record.
void write_tightness_csv(std::ostream& os, std::span<const TightnessRecord> records);

/// Header `bin_lo,bin_hi,count`, one row per bin, then
/// `# mean=<v> samples=<N> env_dim=<d> seed=<S>`.
void write_histogram_csv(std::ostream& os, const DuHistogram& hist);

/// Header `channel,param,du,closed_form,abs_dev,method`.
void write_table1_csv(std::ostream& os, const Table1Report& report);

}  // namespace qdu

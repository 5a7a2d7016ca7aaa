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

#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qdu/du.hpp"
#include "qdu/harness.hpp"
#include "qdu/io.hpp"

namespace qdu::cli {

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << std::setprecision(17);
  return out;
}

void print_bounds(std::ostream& out, const BoundReport& b) {
  out << "lb1 = " << b.lb1 << '\n'
      << "lb1_simplified = " << b.lb1_simplified << '\n'
      << "lb2 = " << b.lb2 << '\n'
      << "ub = " << b.ub << '\n';
  for (std::size_t i = 0; i < b.singular_values.size(); ++i) {
    out << "sigma[" << i << "] =";
    for (double s : b.singular_values[i]) out << ' ' << s;
    out << '\n';
  }
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const KrausChannel ch = load_channel(path);
  const ValidationReport report = validate(ch);
  out << "dim = " << ch.dim() << '\n'
      << "kraus_ops = " << ch.size() << '\n'
      << "residual = " << report.residual << '\n'
      << (report.passed ? "PASS" : "FAIL") << ": trace preservation at tolerance " << kTraceTol << '\n';
  return report.passed ? kExitOk : kExitValidation;
}

int cmd_du(const std::string& path, int restarts, std::uint64_t seed, bool as_json, std::ostream& out) {
  const KrausChannel ch = load_channel(path);
  DuOptions options;
  options.restarts = restarts;
  options.seed = seed;
  const DuAnalysis a = du(ch, options);
  if (as_json) {
    out << du_analysis_to_json(a) << '\n';
    return kExitOk;
  }
  out << "# qdu du seed=" << seed << " restarts=" << restarts << '\n'
      << "du = " << a.result.value << '\n'
      << "method = " << to_string(a.result.method) << '\n'
      << "iterations = " << a.result.iterations << '\n'
      << "converged = " << (a.result.converged ? "true" : "false") << '\n';
  print_bounds(out, a.bounds);
  return kExitOk;
}

int cmd_bounds(const std::string& path, std::ostream& out) {
  const KrausChannel ch = load_channel(path);
  require_valid(ch);
  const BoundReport b = du_bounds(canonicalize(ch));
  print_bounds(out, b);
  return kExitOk;
}

int cmd_table1(int grid, const std::string& csv, std::ostream& out) {
  const std::vector<double> params = uniform_grid(grid);
  const Table1Report report = run_table1(params);
  if (!csv.empty()) {
    std::ofstream file = open_output(csv);
    write_table1_csv(file, report);
  } else {
    write_table1_csv(out, report);
  }
  for (StandardKind kind : {StandardKind::depolarizing, StandardKind::bit_flip, StandardKind::phase_flip,
                            StandardKind::amplitude_damping}) {
    out << "# max_abs_dev " << to_string(kind) << " = " << report.max_deviation(kind) << '\n';
  }
  return kExitOk;
}

int cmd_tightness(const TightnessOptions& options, const std::string& csv, const std::string& csv_by_ub,
                  std::ostream& out) {
  const TightnessResult result = run_tightness(options);
  {
    std::ofstream file = open_output(csv);
    write_tightness_csv(file, result.records);
  }
  if (!csv_by_ub.empty()) {
    std::ofstream file = open_output(csv_by_ub);
    write_tightness_csv(file, result.sorted_by_ub());
  }
  out << "# qdu tightness seed=" << options.seed << " samples=" << options.samples
      << " sys_dim=" << options.sys_dim << " env_dim=" << options.env_dim
      << " stratified=" << (options.stratified ? "true" : "false") << '\n'
      << "records = " << result.records.size() << '\n'
      << "attempts = " << result.attempts << '\n';
  for (const StratumFill& s : result.underfilled()) {
    out << "underfilled bin [" << s.lo << ", " << s.hi << "): " << s.count << " of " << s.target << '\n';
  }
  return kExitOk;
}

int cmd_distribution(const DistributionOptions& options, const std::string& csv, std::ostream& out) {
  const std::vector<DuHistogram> hists = run_distribution(options);
  std::ofstream file = open_output(csv);
  out << "# qdu distribution seed=" << options.seed << " samples=" << options.samples << '\n';
  for (const DuHistogram& h : hists) {
    write_histogram_csv(file, h);
    out << "env_dim = " << h.env_dim << " mean = " << h.mean << " std_error = " << h.std_error
        << " mean_lb1 = " << h.mean_lb1 << " min = " << h.min_value << " max = " << h.max_value << '\n';
  }
  return kExitOk;
}

int cmd_witness(const std::string& path, double threshold, std::ostream& out) {
  const Trajectory traj = load_trajectory(path);
  const WitnessReport report = run_witness(traj, threshold);
  out << "t,du\n";
  for (std::size_t i = 0; i < report.times.size(); ++i) out << report.times[i] << ',' << report.du[i] << '\n';
  for (const WitnessInterval& w : report.flagged) {
    out << "flag [" << report.times[w.from] << ", " << report.times[w.to] << "]: DU increased by " << w.increase
        << '\n';
  }
  out << "verdict = " << report.verdict();
  if (!report.non_markovian()) out << " (no DU increase above " << threshold << "; this does not imply Markovian)";
  out << '\n';
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree of unitarity of quantum channels"};
  app.require_subcommand(1);

  std::string channel_path;
  int restarts = 32;
  std::uint64_t du_seed = DuOptions{}.seed;
  bool as_json = false;
  int grid = 51;
  std::string out_csv;
  std::string out_by_ub;
  double threshold = 1e-6;
  TightnessOptions tight;
  DistributionOptions dist;
  std::string env_dims = "2,4";

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check trace preservation of a channel file");
  validate_cmd->add_option("channel", channel_path, "Channel JSON file")->required();

  CLI::App* du_cmd = app.add_subcommand("du", "Degree of unitarity with bounds");
  du_cmd->add_option("channel", channel_path, "Channel JSON file")->required();
  du_cmd->add_option("--restarts", restarts, "Random optimizer restarts")->check(CLI::NonNegativeNumber);
  du_cmd->add_option("--seed", du_seed, "Seed for optimizer restarts");
  du_cmd->add_flag("--json", as_json, "Emit JSON");

  CLI::App* bounds_cmd = app.add_subcommand("bounds", "Lower and upper bounds only");
  bounds_cmd->add_option("channel", channel_path, "Channel JSON file")->required();

  CLI::App* table_cmd = app.add_subcommand("table1", "Standard qubit channels against their closed forms");
  table_cmd->add_option("--grid", grid, "Parameter grid points over [0, 1]")->check(CLI::PositiveNumber);
  table_cmd->add_option("--out", out_csv, "CSV output path (default stdout)");

  CLI::App* tight_cmd = app.add_subcommand("tightness", "Bound tightness over random channels");
  tight_cmd->add_option("--samples", tight.samples, "Number of records")->required()->check(CLI::PositiveNumber);
  tight_cmd->add_flag("--stratified", tight.stratified, "Rejection-sample into DU bins of width 0.05");
  tight_cmd->add_option("--seed", tight.seed, "Master seed")->required();
  tight_cmd->add_option("--out", out_csv, "CSV output sorted by DU")->required();
  tight_cmd->add_option("--out-by-ub", out_by_ub, "Optional CSV output sorted by upper bound");
  tight_cmd->add_option("--sys-dim", tight.sys_dim, "System dimension")->check(CLI::Range(2, 8));
  tight_cmd->add_option("--env-dim", tight.env_dim, "Environment dimension")->check(CLI::Range(1, 32));
  tight_cmd->add_option("--attempt-cap", tight.attempt_cap, "Per-bin draw cap when stratifying");
  tight_cmd->add_option("--workers", tight.workers, "Worker threads (0 = hardware)");
  tight_cmd->add_option("--restarts", tight.restarts, "Random optimizer restarts")->check(CLI::NonNegativeNumber);

  CLI::App* dist_cmd = app.add_subcommand("distribution", "DU histograms of random channels");
  dist_cmd->add_option("--samples", dist.samples, "Samples per environment dimension")
      ->required()
      ->check(CLI::PositiveNumber);
  dist_cmd->add_option("--env-dims", env_dims, "Comma-separated environment dimensions");
  dist_cmd->add_option("--seed", dist.seed, "Master seed")->required();
  dist_cmd->add_option("--out", out_csv, "CSV output path")->required();
  dist_cmd->add_option("--sys-dim", dist.sys_dim, "System dimension")->check(CLI::Range(2, 8));
  dist_cmd->add_option("--bins", dist.bins, "Histogram bins")->check(CLI::PositiveNumber);
  dist_cmd->add_option("--workers", dist.workers, "Worker threads (0 = hardware)");
  dist_cmd->add_option("--restarts", dist.restarts, "Random optimizer restarts")->check(CLI::NonNegativeNumber);

  CLI::App* witness_cmd = app.add_subcommand("witness", "Non-Markovianity witness along a trajectory");
  witness_cmd->add_option("trajectory", channel_path, "Trajectory JSON file")->required();
  witness_cmd->add_option("--threshold", threshold, "Minimum DU increase that raises a flag");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFormat;
  }

  out << std::setprecision(12);
  try {
    if (*validate_cmd) return cmd_validate(channel_path, out);
    if (*du_cmd) return cmd_du(channel_path, restarts, du_seed, as_json, out);
    if (*bounds_cmd) return cmd_bounds(channel_path, out);
    if (*table_cmd) return cmd_table1(grid, out_csv, out);
    if (*tight_cmd) return cmd_tightness(tight, out_csv, out_by_ub, out);
    if (*dist_cmd) {
      dist.env_dims.clear();
      std::stringstream ss(env_dims);
      for (std::string item; std::getline(ss, item, ',');) {
        int d = 0;
        try {
          std::size_t used = 0;
          d = std::stoi(item, &used);
          if (used != item.size()) d = 0;
        } catch (const std::exception&) {
          d = 0;
        }
        if (d < 1) throw FormatError("--env-dims: '" + item + "' is not a positive integer");
        dist.env_dims.push_back(d);
      }
      if (dist.env_dims.empty()) throw FormatError("--env-dims: empty list");
      return cmd_distribution(dist, out_csv, out);
    }
    if (*witness_cmd) return cmd_witness(channel_path, threshold, out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  return kExitFormat;
}

}  // namespace qdu::cli

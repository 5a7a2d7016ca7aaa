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

#include "qdu/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qdu {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// "line L, column C: <source line>" for a byte offset into text.
std::string line_context(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      line_start = i + 1;
    }
  }
  std::size_t line_end = text.find('\n', line_start);
  if (line_end == std::string::npos) line_end = text.size();
  std::ostringstream os;
  os << "line " << line << ", column " << (byte - line_start + 1) << ": "
     << text.substr(line_start, std::min<std::size_t>(line_end - line_start, 120));
  return os.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // parse_error::byte is 1-based and points just past the offending token.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw FormatError("malformed JSON at " + line_context(text, at) + " (" + e.what() + ")");
  }
}

Complex complex_from(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError(where + ": complex entries must be [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

KrausChannel channel_from(const json& j, const std::string& where) {
  if (!j.is_object()) throw FormatError(where + ": channel must be a JSON object");
  if (j.contains("standard")) {
    if (!j["standard"].is_string()) throw FormatError(where + ": 'standard' must be a string");
    if (!j.contains("param") || !j["param"].is_number()) throw FormatError(where + ": 'param' must be a number");
    try {
      return standard_channel(parse_standard_kind(j["standard"].get<std::string>()), j["param"].get<double>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw FormatError(where + ": missing integer 'dim'");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty()) {
    throw FormatError(where + ": missing non-empty 'kraus' array");
  }
  const long dim = j["dim"].get<long>();
  if (dim < 1 || dim > 64) throw FormatError(where + ": 'dim' must be in [1, 64]");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < j["kraus"].size(); ++k) {
    const json& op = j["kraus"][k];
    const std::string at = where + ": kraus[" + std::to_string(k) + "]";
    if (!op.is_array() || op.size() != static_cast<std::size_t>(dim)) {
      throw FormatError(at + " must have " + std::to_string(dim) + " rows");
    }
    ComplexMatrix m(dim, dim);
    for (long r = 0; r < dim; ++r) {
      const json& row = op[r];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
        throw FormatError(at + " row " + std::to_string(r) + " must have " + std::to_string(dim) + " entries");
      }
      for (long c = 0; c < dim; ++c) m(r, c) = complex_from(row[c], at);
    }
    ops.push_back(std::move(m));
  }
  try {
    return KrausChannel(std::move(ops));
  } catch (const std::invalid_argument& e) {
    throw FormatError(where + ": " + e.what());
  }
}

json channel_json(const KrausChannel& ch) {
  json ops = json::array();
  for (const ComplexMatrix& e : ch.ops()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < e.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < e.cols(); ++c) row.push_back({e(r, c).real(), e(r, c).imag()});
      rows.push_back(std::move(row));
    }
    ops.push_back(std::move(rows));
  }
  return json{{"dim", ch.dim()}, {"kraus", std::move(ops)}};
}

json matrix_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

KrausChannel parse_channel(const std::string& text) { return channel_from(parse_json(text), "channel"); }

KrausChannel load_channel(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_channel(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string channel_to_json(const KrausChannel& ch, int indent) { return channel_json(ch).dump(indent); }

Trajectory parse_trajectory(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw FormatError("trajectory must be a JSON object");
  if (!j.contains("times") || !j["times"].is_array()) throw FormatError("trajectory: missing 'times' array");
  if (!j.contains("channels") || !j["channels"].is_array()) throw FormatError("trajectory: missing 'channels' array");
  Trajectory traj;
  for (const json& t : j["times"]) {
    if (!t.is_number()) throw FormatError("trajectory: times must be numbers");
    traj.times.push_back(t.get<double>());
  }
  for (std::size_t i = 0; i < j["channels"].size(); ++i) {
    traj.channels.push_back(channel_from(j["channels"][i], "trajectory: channels[" + std::to_string(i) + "]"));
  }
  if (traj.times.size() != traj.channels.size()) {
    throw FormatError("trajectory: 'times' and 'channels' have different lengths");
  }
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) throw FormatError("trajectory: 'dim' must be an integer");
    const int dim = j["dim"].get<int>();
    for (const KrausChannel& ch : traj.channels) {
      if (ch.dim() != dim) throw FormatError("trajectory: channel dimension differs from 'dim'");
    }
  }
  return traj;
}

Trajectory load_trajectory(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_trajectory(text);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::string trajectory_to_json(const Trajectory& traj, int indent) {
  json channels = json::array();
  for (const KrausChannel& ch : traj.channels) channels.push_back(channel_json(ch));
  json j{{"dim", traj.channels.empty() ? 0 : traj.channels.front().dim()},
         {"times", traj.times},
         {"channels", std::move(channels)}};
  return j.dump(indent);
}

std::string du_analysis_to_json(const DuAnalysis& a, int indent) {
  json sv = json::array();
  for (const auto& s : a.bounds.singular_values) sv.push_back(s);
  json j{{"du", a.result.value},
         {"method", std::string(to_string(a.result.method))},
         {"iterations", a.result.iterations},
         {"converged", a.result.converged},
         {"witness", matrix_json(a.result.witness.mat())},
         {"bounds",
          {{"lb1", a.bounds.lb1},
           {"lb1_simplified", a.bounds.lb1_simplified},
           {"lb2", a.bounds.lb2},
           {"ub", a.bounds.ub},
           {"singular_values", std::move(sv)},
           {"witness_lb1", matrix_json(a.bounds.witness_lb1.mat())},
           {"witness_lb2", matrix_json(a.bounds.witness_lb2.mat())}}}};
  return j.dump(indent);
}

void write_tightness_csv(std::ostream& os, std::span<const TightnessRecord> records) {
  os << "du,lb1,lb2,lb1_err,lb2_err,ub,seed\n";
  os << std::setprecision(17);
  for (const TightnessRecord& r : records) {
    os << r.du_value << ',' << r.lb1 << ',' << r.lb2 << ',' << r.lb1_err << ',' << r.lb2_err << ',' << r.ub << ','
       << r.seed << '\n';
  }
}

void write_histogram_csv(std::ostream& os, const DuHistogram& h) {
  os << "bin_lo,bin_hi,count\n";
  os << std::setprecision(17);
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    os << h.bin_edges[b] << ',' << h.bin_edges[b + 1] << ',' << h.counts[b] << '\n';
  }
  os << "# mean=" << h.mean << " samples=" << h.sample_count << " env_dim=" << h.env_dim << " seed=" << h.seed
     << '\n';
}

void write_table1_csv(std::ostream& os, const Table1Report& report) {
  os << "channel,param,du,closed_form,abs_dev,method\n";
  os << std::setprecision(17);
  for (const Table1Row& r : report.rows) {
    os << to_string(r.kind) << ',' << r.param << ',' << r.du << ',' << r.closed_form << ',' << r.deviation << ','
       << to_string(r.method) << '\n';
  }
}

}  // namespace qdu

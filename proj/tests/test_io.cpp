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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qdu/io.hpp"

using namespace qdu;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_channel(text);
  } catch (const FormatError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("parse_channel") {
  SUBCASE("explicit Kraus operators") {
    const KrausChannel ch = parse_channel(R"({"dim": 2, "kraus": [
      [[[1, 0], [0, 0]], [[0, 0], [0.8, 0]]],
      [[[0, 0], [0.6, 0]], [[0, 0], [0, 0]]]
    ]})");
    CHECK(ch.dim() == 2);
    REQUIRE(ch.size() == 2);
    CHECK(ch.ops()[0](1, 1) == Complex(0.8, 0.0));
    CHECK(ch.ops()[1](0, 1) == Complex(0.6, 0.0));
    CHECK(validate(ch).passed);
  }
  SUBCASE("real numbers are accepted as entries") {
    const KrausChannel ch = parse_channel(R"({"dim": 1, "kraus": [[[1]]]})");
    CHECK(ch.ops()[0](0, 0) == Complex(1.0, 0.0));
  }
  SUBCASE("imaginary parts") {
    const KrausChannel ch = parse_channel(R"({"dim": 2, "kraus": [[[[0, 0], [0, -1]], [[0, 1], [0, 0]]]]})");
    CHECK((ch.ops()[0] - pauli_y()).norm() == 0.0);
  }
  SUBCASE("standard form") {
    const KrausChannel ch = parse_channel(R"({"standard": "amplitude_damping", "param": 0.36})");
    const KrausChannel ref = standard_channel(StandardKind::amplitude_damping, 0.36);
    REQUIRE(ch.size() == ref.size());
    for (std::size_t k = 0; k < ch.size(); ++k) CHECK((ch.ops()[k] - ref.ops()[k]).norm() == 0.0);
  }
  SUBCASE("non-trace-preserving input still parses") {
    CHECK_FALSE(validate(parse_channel(R"({"dim": 1, "kraus": [[[0.5]]]})")).passed);
  }
}

TEST_CASE("parse_channel errors") {
  SUBCASE("syntax error carries the line") {
    const std::string msg = error_of("{\n  \"dim\": 2,\n  \"kraus\": [ oops ]\n}");
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("oops") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_channel("[]"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"kraus": [[[1]]]})"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"dim": 2, "kraus": []})"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"dim": 2, "kraus": [[[1, 0]]]})"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"dim": 1, "kraus": [[[[1, 0, 0]]]]})"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"dim": 1, "kraus": [[["x"]]]})"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"standard": "nope", "param": 0.1})"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"standard": "bit_flip", "param": 2})"), FormatError);
  CHECK_THROWS_AS(parse_channel(R"({"standard": "bit_flip"})"), FormatError);
  CHECK_THROWS_AS(load_channel("/nonexistent/channel.json"), FormatError);
}

TEST_CASE("channel JSON round trip") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const KrausChannel ch = random_channel(2 + trial % 3, 1 + trial % 4, rng);
    const KrausChannel back = parse_channel(channel_to_json(ch));
    REQUIRE(back.size() == ch.size());
    for (std::size_t k = 0; k < ch.size(); ++k) CHECK((back.ops()[k] - ch.ops()[k]).norm() == 0.0);
  }
}

TEST_CASE("trajectory JSON") {
  const double times[] = {0.0, 0.5, 1.0};
  const Trajectory traj = amplitude_damping_trajectory(times);
  const Trajectory back = parse_trajectory(trajectory_to_json(traj, 2));
  CHECK(back.times == traj.times);
  REQUIRE(back.channels.size() == 3);
  CHECK((back.channels[2].ops()[1] - traj.channels[2].ops()[1]).norm() == 0.0);

  const Trajectory standard = parse_trajectory(R"({"dim": 2, "times": [0, 1],
    "channels": [{"standard": "amplitude_damping", "param": 0}, {"standard": "amplitude_damping", "param": 0.5}]})");
  CHECK(standard.channels.size() == 2);

  CHECK_THROWS_AS(parse_trajectory(R"({"times": [0, 1], "channels": [{"standard": "bit_flip", "param": 0}]})"),
                  FormatError);
  CHECK_THROWS_AS(parse_trajectory(R"({"dim": 3, "times": [0], "channels": [{"standard": "bit_flip", "param": 0}]})"),
                  FormatError);
  CHECK_THROWS_AS(parse_trajectory(R"({"times": [0]})"), FormatError);
}

TEST_CASE("du_analysis_to_json") {
  const DuAnalysis a = du(standard_channel(StandardKind::amplitude_damping, 0.36));
  const nlohmann::json j = nlohmann::json::parse(du_analysis_to_json(a));
  CHECK(j["du"].get<double>() == doctest::Approx(0.81).epsilon(1e-9));
  CHECK(j["method"] == "numerical_optimizer");
  CHECK(j["bounds"]["lb1"].get<double>() == doctest::Approx(0.81));
  CHECK(j["bounds"]["ub"].get<double>() == doctest::Approx(0.9));
  CHECK(j["witness"].size() == 2);
  CHECK(j["bounds"]["singular_values"].size() == 2);
}

TEST_CASE("CSV writers") {
  SUBCASE("tightness") {
    std::vector<TightnessRecord> records{{0.9, 0.8, 0.85, 0.1, 0.05, 0.95, 42}};
    std::ostringstream os;
    write_tightness_csv(os, records);
    std::istringstream in(os.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "du,lb1,lb2,lb1_err,lb2_err,ub,seed");
    CHECK(row.substr(0, 4) == "0.90");
    CHECK(row.substr(row.size() - 3) == ",42");
  }
  SUBCASE("histogram") {
    DuHistogram h{2, {0.25, 0.5, 1.0}, {3, 1}, 4, 0.6, 0.01, 0.55, 0.3, 0.9, 7};
    std::ostringstream os;
    write_histogram_csv(os, h);
    std::istringstream in(os.str());
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "bin_lo,bin_hi,count");
    CHECK(lines[1] == "0.25,0.5,3");
    CHECK(lines[3].rfind("# mean=0.59999", 0) == 0);
    CHECK(lines[3].find(" samples=4 env_dim=2 seed=7") != std::string::npos);
  }
  SUBCASE("table") {
    const double grid[] = {0.5};
    std::ostringstream os;
    write_table1_csv(os, run_table1(grid));
    std::istringstream in(os.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "channel,param,du,closed_form,abs_dev,method");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 4);
  }
}

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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "qdu/harness.hpp"

using namespace qdu;

TEST_CASE("closed_form_du") {
  CHECK(closed_form_du(StandardKind::depolarizing, 0.2) == doctest::Approx(0.85));
  CHECK(closed_form_du(StandardKind::bit_flip, 0.3) == doctest::Approx(0.7));
  CHECK(closed_form_du(StandardKind::amplitude_damping, 0.36) == doctest::Approx(0.81));
  CHECK(closed_form_du(StandardKind::amplitude_damping, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("uniform_grid") {
  const auto g = uniform_grid(11);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[5] == doctest::Approx(0.5));
  CHECK_THROWS_AS(uniform_grid(0), ContractError);
}

TEST_CASE("run_table1") {
  SUBCASE("eleven-point grid") {
    const auto grid = uniform_grid(11);
    const Table1Report report = run_table1(grid);
    CHECK(report.rows.size() == 44);
    CHECK(report.max_deviation(StandardKind::depolarizing) < 1e-9);
    CHECK(report.max_deviation(StandardKind::bit_flip) < 1e-9);
    CHECK(report.max_deviation(StandardKind::phase_flip) < 1e-9);
    CHECK(report.max_deviation(StandardKind::amplitude_damping) < 1e-6);
    for (const Table1Row& row : report.rows) {
      if (row.kind == StandardKind::amplitude_damping && row.param > 0.0 && row.param < 1.0)
        CHECK(row.method == DuMethod::numerical_optimizer);
      if (row.kind != StandardKind::amplitude_damping) CHECK(row.method == DuMethod::exact_mixed_unitary);
    }
  }
  SUBCASE("depolarizing at p = 4/7") {
    // 1 - 3p/4 = 4/7 dominates p/4 = 1/7 here; the two branches meet only at p = 1.
    const double p = 4.0 / 7.0;
    const double grid[] = {p, 1.0};
    const Table1Report report = run_table1(grid);
    for (const Table1Row& row : report.rows) {
      if (row.kind != StandardKind::depolarizing) continue;
      if (row.param == p) CHECK(std::abs(row.du - 4.0 / 7.0) < 1e-9);
      if (row.param == 1.0) {
        CHECK(std::abs(row.du - 0.25) < 1e-9);
        CHECK(1.0 / 4.0 == 1.0 - 3.0 / 4.0);
      }
    }
  }
  SUBCASE("amplitude damping at gamma = 1") {
    const double grid[] = {1.0};
    for (const Table1Row& row : run_table1(grid).rows)
      if (row.kind == StandardKind::amplitude_damping) CHECK(std::abs(row.du - 0.25) < 1e-9);
  }
  SUBCASE("out-of-range parameter") {
    const double grid[] = {1.5};
    CHECK_THROWS_AS(run_table1(grid), ContractError);
  }
}

TEST_CASE("run_tightness") {
  SUBCASE("plain sampling") {
    TightnessOptions options;
    options.samples = 200;
    options.seed = 3;
    const TightnessResult r = run_tightness(options);
    REQUIRE(r.records.size() == 200);
    CHECK(r.attempts == 200);
    CHECK(r.strata.empty());
    for (const TightnessRecord& rec : r.records) {
      CHECK(rec.lb1_err >= -1e-9);
      CHECK(rec.lb2_err >= -1e-9);
      CHECK(rec.du_value <= rec.ub + 1e-9);
      CHECK(rec.lb1_err == doctest::Approx(rec.du_value - rec.lb1));
    }
    CHECK(std::is_sorted(r.records.begin(), r.records.end(),
                         [](const auto& a, const auto& b) { return a.du_value < b.du_value; }));
    const auto by_ub = r.sorted_by_ub();
    CHECK(std::is_sorted(by_ub.begin(), by_ub.end(), [](const auto& a, const auto& b) { return a.ub < b.ub; }));
  }
  SUBCASE("seed reproduces the channel") {
    TightnessOptions options;
    options.samples = 5;
    options.seed = 4;
    const TightnessResult r = run_tightness(options);
    for (const TightnessRecord& rec : r.records) {
      Rng rng(rec.seed);
      const KrausChannel ch = random_channel(2, 2, rng);
      const DuAnalysis a = du(ch);
      CHECK(a.bounds.ub == rec.ub);
      CHECK(a.bounds.lb1 == rec.lb1);
      CHECK(std::abs(a.result.value - rec.du_value) < 1e-10);
    }
  }
  SUBCASE("independent of worker count") {
    TightnessOptions options;
    options.samples = 60;
    options.seed = 5;
    options.workers = 1;
    const TightnessResult a = run_tightness(options);
    options.workers = 3;
    const TightnessResult b = run_tightness(options);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].du_value == b.records[i].du_value);
      CHECK(a.records[i].seed == b.records[i].seed);
    }
  }
  SUBCASE("stratified sampling reports under-filled bins") {
    TightnessOptions options;
    options.samples = 150;
    options.seed = 6;
    options.stratified = true;
    options.attempt_cap = 2000;
    const TightnessResult r = run_tightness(options);
    REQUIRE(r.strata.size() == 15);
    std::size_t total = 0;
    for (const StratumFill& s : r.strata) {
      CHECK(s.target == 10);
      CHECK(s.count <= s.target);
      total += s.count;
    }
    CHECK(total == r.records.size());
    // qubit channels with a qubit environment never reach the lowest bins
    CHECK_FALSE(r.underfilled().empty());
    CHECK(r.underfilled().front().lo == doctest::Approx(0.25));
    for (const TightnessRecord& rec : r.records) {
      CHECK(rec.lb1_err >= -1e-9);
      CHECK(rec.lb2_err >= -1e-9);
    }
  }
  SUBCASE("sample count must be positive") {
    TightnessOptions options;
    options.samples = 0;
    CHECK_THROWS_AS(run_tightness(options), ContractError);
  }
}

TEST_CASE("run_distribution") {
  SUBCASE("trivial environment puts all mass at one") {
    DistributionOptions options;
    options.samples = 50;
    options.env_dims = {1};
    options.seed = 7;
    const auto hists = run_distribution(options);
    REQUIRE(hists.size() == 1);
    CHECK(hists[0].counts.back() == 50);
    CHECK(std::abs(hists[0].mean - 1.0) < 1e-12);
  }
  SUBCASE("range and counts") {
    DistributionOptions options;
    options.samples = 400;
    options.seed = 8;
    const auto hists = run_distribution(options);
    REQUIRE(hists.size() == 2);
    for (const DuHistogram& h : hists) {
      CHECK(std::accumulate(h.counts.begin(), h.counts.end(), std::size_t{0}) == 400);
      CHECK(h.sample_count == 400);
      CHECK(h.bin_edges.size() == h.counts.size() + 1);
      CHECK(h.bin_edges.front() == doctest::Approx(0.25));
      CHECK(h.bin_edges.back() == doctest::Approx(1.0));
      CHECK(h.min_value >= 0.25 - 1e-9);
      CHECK(h.max_value <= 1.0 + 1e-9);
      CHECK(h.mean_lb1 <= h.mean + 1e-12);
      CHECK(h.seed == 8);
    }
    CHECK(hists[0].env_dim == 2);
    CHECK(hists[1].env_dim == 4);
    CHECK(hists[0].mean > hists[1].mean);
  }
  SUBCASE("independent of worker count") {
    DistributionOptions options;
    options.samples = 40;
    options.seed = 9;
    options.workers = 1;
    const auto a = run_distribution(options);
    options.workers = 4;
    const auto b = run_distribution(options);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].counts == b[i].counts);
      CHECK(a[i].mean == b[i].mean);
    }
  }
}

TEST_CASE("run_witness") {
  SUBCASE("Markovian amplitude damping") {
    std::vector<double> times;
    for (int i = 0; i <= 10; ++i) times.push_back(0.5 * i);
    const WitnessReport r = run_witness(amplitude_damping_trajectory(times));
    CHECK_FALSE(r.non_markovian());
    CHECK(r.verdict() == "inconclusive");
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double root = 1.0 + std::exp(-times[i] / 2.0);
      CHECK(std::abs(r.du[i] - root * root / 4.0) < 1e-6);
    }
  }
  SUBCASE("recovering damping is flagged on the right interval") {
    const double times[] = {0.0, 1.0, 2.0};
    const double gammas[] = {0.0, 0.5, 0.2};
    const WitnessReport r = run_witness(amplitude_damping_trajectory(times, gammas));
    REQUIRE(r.flagged.size() == 1);
    CHECK(r.flagged[0].from == 1);
    CHECK(r.flagged[0].to == 2);
    CHECK(r.flagged[0].increase == doctest::Approx(closed_form_du(StandardKind::amplitude_damping, 0.2) -
                                                   closed_form_du(StandardKind::amplitude_damping, 0.5))
                                       .epsilon(1e-6));
    CHECK(r.verdict() == "non-Markovian");
  }
  SUBCASE("constant trajectory") {
    const double times[] = {0.0, 1.0, 2.0, 3.0};
    const double gammas[] = {0.3, 0.3, 0.3, 0.3};
    CHECK_FALSE(run_witness(amplitude_damping_trajectory(times, gammas)).non_markovian());
  }
  SUBCASE("malformed trajectories") {
    Trajectory t{{0.0, 1.0}, {KrausChannel::identity(2)}};
    CHECK_THROWS_AS(run_witness(t), ValidationError);
    t = Trajectory{{1.0, 0.0}, {KrausChannel::identity(2), KrausChannel::identity(2)}};
    CHECK_THROWS_AS(run_witness(t), ValidationError);
    t = Trajectory{{0.0, 1.0}, {KrausChannel::identity(2), KrausChannel::identity(3)}};
    CHECK_THROWS_AS(run_witness(t), ValidationError);
    t = Trajectory{{0.0}, {KrausChannel({0.5 * ComplexMatrix::Identity(2, 2)})}};
    CHECK_THROWS_AS(run_witness(t), ValidationError);
  }
}

TEST_CASE("derive_seed") {
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 2, 4));
  CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
}

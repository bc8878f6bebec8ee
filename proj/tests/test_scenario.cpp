// Copyright 2026 The PedEval Authors. All Rights Reserved.
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
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "pedeval/errors.hpp"
#include "pedeval/scenario.hpp"

using namespace pedeval;

namespace {
const ScenarioBinning kBins;

ScenarioContext make_ctx(double scale, bool walking, double speed,
                         SignalState signal = SignalState::none,
                         RoadType road = RoadType::two_way) {
  ScenarioContext ctx;
  ctx.mean_scale = scale;
  ctx.state = walking ? PedState::walking : PedState::standing;
  ctx.mean_speed = speed;
  ctx.signal = signal;
  ctx.road_type = road;
  return ctx;
}

EvalRow ctx_row(const ScenarioContext& ctx, int gt, std::vector<double> conf,
                const std::string& ped = "p0") {
  EvalRow row = fixtures::make_row(gt, std::move(conf), 1.0, ped);
  row.sample.context = ctx;
  return row;
}

EvalRow task_row(Task task, const std::string& ped, int gt, bool correct,
                 int arity) {
  std::vector<double> conf(static_cast<std::size_t>(arity), 0.05);
  const int target = correct ? gt : (gt + 1) % arity;
  conf[static_cast<std::size_t>(target)] = 0.9;
  EvalRow row = fixtures::make_row(gt, std::move(conf), 1.0, ped);
  row.sample.task = task;
  return row;
}
}  // namespace

TEST_CASE("factor bin labels") {
  CHECK(factor_bin_labels(ScenarioFactor::scale, kBins) ==
        std::vector<std::string>{"(0,60]", "(60,120]", "(120,inf)"});
  CHECK(factor_bin_labels(ScenarioFactor::speed, kBins) ==
        std::vector<std::string>{"=0", "(0,10]", "(10,20]", "(20,30]",
                                 "(30,inf)"});
  CHECK(factor_bin_labels(ScenarioFactor::state, kBins) ==
        std::vector<std::string>{"walking", "standing"});
  CHECK(factor_bin_labels(ScenarioFactor::signal, kBins) ==
        std::vector<std::string>{"forbid", "allow", "none"});
  CHECK(factor_bin_labels(ScenarioFactor::road, kBins) ==
        std::vector<std::string>{"one_way", "two_way", "unknown"});

  ScenarioBinning custom;
  custom.speed_bins = {0.0, 5.0, 25.0};
  custom.scale_bins = {80.5};
  CHECK(factor_bin_labels(ScenarioFactor::speed, custom) ==
        std::vector<std::string>{"=0", "(0,5]", "(5,25]", "(25,inf)"});
  CHECK(factor_bin_labels(ScenarioFactor::scale, custom) ==
        std::vector<std::string>{"(0,80.5]", "(80.5,inf)"});
}

TEST_CASE("factor bin indices use upper-closed cuts") {
  SUBCASE("scale") {
    CHECK(factor_bin_index(make_ctx(10, true, 0), ScenarioFactor::scale,
                           kBins) == 0);
    CHECK(factor_bin_index(make_ctx(60, true, 0), ScenarioFactor::scale,
                           kBins) == 0);
    CHECK(factor_bin_index(make_ctx(60.01, true, 0), ScenarioFactor::scale,
                           kBins) == 1);
    CHECK(factor_bin_index(make_ctx(120, true, 0), ScenarioFactor::scale,
                           kBins) == 1);
    CHECK(factor_bin_index(make_ctx(500, true, 0), ScenarioFactor::scale,
                           kBins) == 2);
  }
  SUBCASE("speed keeps a dedicated stationary bin") {
    CHECK(factor_bin_index(make_ctx(10, true, 0.0), ScenarioFactor::speed,
                           kBins) == 0);
    CHECK(factor_bin_index(make_ctx(10, true, 0.001), ScenarioFactor::speed,
                           kBins) == 1);
    CHECK(factor_bin_index(make_ctx(10, true, 10.0), ScenarioFactor::speed,
                           kBins) == 1);
    CHECK(factor_bin_index(make_ctx(10, true, 15.0), ScenarioFactor::speed,
                           kBins) == 2);
    CHECK(factor_bin_index(make_ctx(10, true, 30.0), ScenarioFactor::speed,
                           kBins) == 3);
    CHECK(factor_bin_index(make_ctx(10, true, 95.0), ScenarioFactor::speed,
                           kBins) == 4);
  }
  SUBCASE("categorical factors") {
    CHECK(factor_bin_index(make_ctx(10, true, 0), ScenarioFactor::state,
                           kBins) == 0);
    CHECK(factor_bin_index(make_ctx(10, false, 0), ScenarioFactor::state,
                           kBins) == 1);
    CHECK(factor_bin_index(make_ctx(10, true, 0, SignalState::forbid),
                           ScenarioFactor::signal, kBins) == 0);
    CHECK(factor_bin_index(make_ctx(10, true, 0, SignalState::none),
                           ScenarioFactor::signal, kBins) == 2);
    CHECK(factor_bin_index(
              make_ctx(10, true, 0, SignalState::none, RoadType::unknown),
              ScenarioFactor::road, kBins) == 2);
  }
}

TEST_CASE("bin index always lands inside the label range") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> scale(-5.0, 400.0);
  std::uniform_real_distribution<double> speed(0.0, 120.0);
  for (int i = 0; i < 500; ++i) {
    const auto ctx = make_ctx(scale(rng), i % 2 == 0, speed(rng));
    for (const ScenarioFactor f :
         {ScenarioFactor::scale, ScenarioFactor::speed, ScenarioFactor::state,
          ScenarioFactor::signal, ScenarioFactor::road}) {
      const int idx = factor_bin_index(ctx, f, kBins);
      CHECK(idx >= 0);
      CHECK(idx < static_cast<int>(factor_bin_labels(f, kBins).size()));
    }
  }
}

TEST_CASE("slice partitions rows per factor") {
  std::vector<EvalRow> rows;
  // 12 small-scale walking rows at speed 15, correct.
  for (int i = 0; i < 12; ++i) {
    rows.push_back(ctx_row(make_ctx(40, true, 15), 1, {0.2, 0.8},
                           "a" + std::to_string(i)));
  }
  // 3 large-scale standing rows at speed 0, wrong (low-confidence bin).
  for (int i = 0; i < 3; ++i) {
    rows.push_back(ctx_row(make_ctx(200, false, 0), 1, {0.9, 0.1},
                           "b" + std::to_string(i)));
  }
  const auto bins = slice(rows, 2, kBins, 1);

  // Factors appear in configuration order with every label present.
  REQUIRE(bins.size() == 3 + 2 + 5 + 3 + 3);
  CHECK(bins[0].factor == "scale");
  CHECK(bins[0].bin == "(0,60]");
  CHECK(bins[0].count == 12);
  CHECK_FALSE(bins[0].low_confidence);
  CHECK(bins[0].metrics.acc == doctest::Approx(1.0));
  CHECK(bins[1].count == 0);
  CHECK(bins[1].low_confidence);
  CHECK(std::count(bins[1].metrics.degenerate.begin(),
                   bins[1].metrics.degenerate.end(), "empty_bin") == 1);
  CHECK(bins[2].bin == "(120,inf)");
  CHECK(bins[2].count == 3);
  CHECK(bins[2].low_confidence);
  CHECK(bins[2].metrics.acc == doctest::Approx(0.0));

  // Per factor, the bin counts must sum to the row count.
  for (const std::string factor : {"scale", "state", "speed", "signal",
                                   "road"}) {
    std::int64_t total = 0;
    for (const auto& b : bins) {
      if (b.factor == factor) {
        total += b.count;
      }
    }
    CHECK(total == 15);
  }

  const auto& walking = bins[3];
  CHECK(walking.factor == "state");
  CHECK(walking.bin == "walking");
  CHECK(walking.count == 12);
  const auto& stationary = bins[5];
  CHECK(stationary.factor == "speed");
  CHECK(stationary.bin == "=0");
  CHECK(stationary.count == 3);
}

TEST_CASE("restricting factors trims the report") {
  ScenarioBinning narrow;
  narrow.factors = {ScenarioFactor::state};
  const std::vector<EvalRow> rows = {
      ctx_row(make_ctx(40, true, 5), 0, {0.8, 0.2})};
  const auto bins = slice(rows, 2, narrow, 1);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].factor == "state");
  CHECK(bins[1].count == 0);
}

TEST_CASE("pair slices combine two factors") {
  ScenarioBinning pair_bins;
  pair_bins.factors = {ScenarioFactor::scale, ScenarioFactor::speed};
  pair_bins.min_samples = 1;
  const std::vector<EvalRow> rows = {
      ctx_row(make_ctx(50, true, 15), 1, {0.1, 0.9}, "p1"),
      ctx_row(make_ctx(130, true, 0), 0, {0.1, 0.9}, "p2")};
  const auto bins = slice_pairs(rows, 2, pair_bins, 1);
  // One factor pair: 3 scale bins x 5 speed bins.
  REQUIRE(bins.size() == 15);
  for (const auto& b : bins) {
    CHECK(b.factor == "scale*speed");
  }
  std::int64_t total = 0;
  for (const auto& b : bins) {
    total += b.count;
  }
  CHECK(total == 2);
  const auto hit = std::find_if(bins.begin(), bins.end(), [](const auto& b) {
    return b.count > 0 && b.bin == "(0,60]|(10,20]";
  });
  REQUIRE(hit != bins.end());
  CHECK(hit->metrics.acc == doctest::Approx(1.0));
  const auto hit2 = std::find_if(bins.begin(), bins.end(), [](const auto& b) {
    return b.count > 0 && b.bin == "(120,inf)|=0";
  });
  REQUIRE(hit2 != bins.end());
  CHECK(hit2->metrics.acc == doctest::Approx(0.0));
}

TEST_CASE("three enabled factors give three pair reports") {
  ScenarioBinning three;
  three.factors = {ScenarioFactor::scale, ScenarioFactor::state,
                   ScenarioFactor::road};
  const std::vector<EvalRow> rows = {
      ctx_row(make_ctx(50, true, 15), 0, {0.8, 0.2})};
  const auto bins = slice_pairs(rows, 2, three, 1);
  std::vector<std::string> factors;
  for (const auto& b : bins) {
    if (factors.empty() || factors.back() != b.factor) {
      factors.push_back(b.factor);
    }
  }
  CHECK(factors == std::vector<std::string>{"scale*state", "scale*road",
                                            "state*road"});
}

TEST_CASE("binning validation") {
  ScenarioBinning b;
  b.scale_bins = {};
  CHECK_THROWS_AS(validate(b), ValidationError);
  b = ScenarioBinning{};
  b.scale_bins = {120.0, 60.0};
  CHECK_THROWS_AS(validate(b), ValidationError);
  b = ScenarioBinning{};
  b.speed_bins = {5.0, 10.0};
  CHECK_THROWS_AS(validate(b), ValidationError);
  b = ScenarioBinning{};
  b.factors = {};
  CHECK_THROWS_AS(validate(b), ValidationError);
  b = ScenarioBinning{};
  b.min_samples = -1;
  CHECK_THROWS_AS(validate(b), ValidationError);
  CHECK_NOTHROW(validate(ScenarioBinning{}));
}

TEST_CASE("agreement over four windows, one per outcome") {
  std::vector<EvalRow> irows = {task_row(Task::intention, "w1", 2, true, 3),
                                task_row(Task::intention, "w2", 2, true, 3),
                                task_row(Task::intention, "w3", 0, false, 3),
                                task_row(Task::intention, "w4", 1, false, 3)};
  std::vector<EvalRow> arows = {task_row(Task::action, "w1", 1, true, 2),
                                task_row(Task::action, "w2", 1, false, 2),
                                task_row(Task::action, "w3", 0, true, 2),
                                task_row(Task::action, "w4", 0, false, 2)};
  const AgreementReport rep = agreement(irows, arows);
  CHECK(rep.matched == 4);
  CHECK(rep.model == "m");
  CHECK(rep.intention_unmatched == 0);
  CHECK(rep.action_unmatched == 0);
  CHECK(rep.outcome_counts ==
        std::array<std::int64_t, 4>{1, 1, 1, 1});
  for (const double f : rep.outcome_fractions) {
    CHECK(f == doctest::Approx(0.25));
  }

  // The full 3 x 2 x 4 grid in fixed order.
  REQUIRE(rep.cells.size() == 24);
  for (std::size_t i = 0; i < rep.cells.size(); ++i) {
    CHECK(rep.cells[i].intention_class == static_cast<int>(i / 8));
    CHECK(rep.cells[i].action_class == static_cast<int>((i / 4) % 2));
    CHECK(rep.cells[i].outcome == static_cast<AgreementOutcome>(i % 4));
  }
  // w1: intention gt 2, action gt 1, both correct -> cell (2,1,0).
  CHECK(rep.cells[(2 * 2 + 1) * 4 + 0].count == 1);
  // w2: (2,1) intention only.
  CHECK(rep.cells[(2 * 2 + 1) * 4 + 1].count == 1);
  // w3: (0,0) action only.
  CHECK(rep.cells[(0 * 2 + 0) * 4 + 2].count == 1);
  // w4: (1,0) both incorrect.
  CHECK(rep.cells[(1 * 2 + 0) * 4 + 3].count == 1);

  double cell_sum = 0.0;
  for (const auto& c : rep.cells) {
    cell_sum += c.fraction;
  }
  CHECK(cell_sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("agreement counts unmatched windows on both sides") {
  std::vector<EvalRow> irows = {task_row(Task::intention, "w1", 1, true, 3),
                                task_row(Task::intention, "w5", 1, true, 3)};
  std::vector<EvalRow> arows = {task_row(Task::action, "w1", 1, true, 2),
                                task_row(Task::action, "w6", 0, true, 2),
                                task_row(Task::action, "w7", 0, false, 2)};
  const AgreementReport rep = agreement(irows, arows);
  CHECK(rep.matched == 1);
  CHECK(rep.intention_unmatched == 1);
  CHECK(rep.action_unmatched == 2);
}

TEST_CASE("agreement rejects disjoint sets, mixed models, wrong tasks") {
  std::vector<EvalRow> irows = {task_row(Task::intention, "w1", 1, true, 3)};
  std::vector<EvalRow> arows = {task_row(Task::action, "w9", 1, true, 2)};
  CHECK_THROWS_AS(agreement(irows, arows), JoinMismatch);

  arows = {task_row(Task::action, "w1", 1, true, 2)};
  arows[0].pred.model = "other";
  CHECK_THROWS_AS(agreement(irows, arows), ValidationError);

  arows = {task_row(Task::intention, "w1", 1, true, 3)};
  CHECK_THROWS_AS(agreement(irows, arows), ValidationError);
}

TEST_CASE("outcome fractions reproduce published-style numbers") {
  // 2000 matched windows split 1259 / 70 / 219 / 452.
  const std::array<std::int64_t, 4> target = {1259, 70, 219, 452};
  std::vector<EvalRow> irows;
  std::vector<EvalRow> arows;
  int idx = 0;
  for (int o = 0; o < 4; ++o) {
    const bool i_ok = o == 0 || o == 1;
    const bool a_ok = o == 0 || o == 2;
    for (std::int64_t n = 0; n < target[static_cast<std::size_t>(o)]; ++n) {
      const std::string ped = "w" + std::to_string(idx++);
      irows.push_back(task_row(Task::intention, ped, 1, i_ok, 3));
      arows.push_back(task_row(Task::action, ped, 1, a_ok, 2));
    }
  }
  const AgreementReport rep = agreement(irows, arows);
  CHECK(rep.matched == 2000);
  CHECK(rep.outcome_counts == target);
  for (std::size_t o = 0; o < 4; ++o) {
    CHECK(rep.outcome_fractions[o] ==
          doctest::Approx(static_cast<double>(target[o]) / 2000.0)
              .epsilon(1e-9));
  }
  const double sum = rep.outcome_fractions[0] + rep.outcome_fractions[1] +
                     rep.outcome_fractions[2] + rep.outcome_fractions[3];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // Marginal accuracies bracket the joint outcomes.
  const double acc_i = rep.outcome_fractions[0] + rep.outcome_fractions[1];
  const double acc_a = rep.outcome_fractions[0] + rep.outcome_fractions[2];
  CHECK(rep.outcome_fractions[0] <= std::min(acc_i, acc_a));
  CHECK(std::max(acc_i, acc_a) <= acc_i + acc_a - rep.outcome_fractions[0]);
}

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
#include <vector>

#include <doctest.h>

#include "fixtures.hpp"
#include "pedeval/errors.hpp"
#include "pedeval/metrics_instance.hpp"

using namespace pedeval;

namespace {

InstanceSeries make_series(const std::string& ped_id, int gt,
                           std::vector<std::vector<double>> confs) {
  InstanceSeries s;
  s.ped_id = ped_id;
  s.gt_label = gt;
  std::int64_t start = 0;
  for (auto& c : confs) {
    s.samples.emplace_back(start, std::move(c));
    start += 10;
  }
  return s;
}

// Four binary instances: stable-correct, flip-flopping with a correct
// mean, stable-wrong, flip-flopping with a wrong mean.
std::vector<EvalRow> fig_rows() {
  std::vector<EvalRow> rows;
  auto add = [&rows](const std::string& ped, int gt,
                     std::vector<std::vector<double>> confs) {
    std::int64_t start = 0;
    for (auto& c : confs) {
      rows.push_back(fixtures::make_row(gt, std::move(c), 1.0, ped, start));
      start += 10;
    }
  };
  add("a_stable_right", 1, {{0.2, 0.8}, {0.25, 0.75}, {0.3, 0.7}});
  add("b_flip", 1, {{0.4, 0.6}, {0.7, 0.3}, {0.35, 0.65}});
  add("c_stable_wrong", 1, {{0.8, 0.1}, {0.7, 0.3}});
  add("d_flip_wrong", 0, {{0.3, 0.7}, {0.6, 0.4}});
  return rows;
}

}  // namespace

TEST_CASE("grouping sorts instances and their samples") {
  std::vector<EvalRow> rows = {
      fixtures::make_row(1, {0.4, 0.6}, 1.0, "p2", 20),
      fixtures::make_row(0, {0.9, 0.1}, 1.0, "p10", 0),
      fixtures::make_row(1, {0.3, 0.7}, 1.0, "p2", 0),
      fixtures::make_row(1, {0.5, 0.5}, 1.0, "p2", 10),
  };
  const auto series = group_instances(rows);
  REQUIRE(series.size() == 2);
  // Lexicographic, so "p10" precedes "p2".
  CHECK(series[0].ped_id == "p10");
  CHECK(series[1].ped_id == "p2");
  CHECK(series[0].gt_label == 0);
  CHECK(series[1].gt_label == 1);
  REQUIRE(series[1].samples.size() == 3);
  CHECK(series[1].samples[0].first == 0);
  CHECK(series[1].samples[1].first == 10);
  CHECK(series[1].samples[2].first == 20);
  CHECK(series[1].samples[2].second == std::vector<double>{0.4, 0.6});
}

TEST_CASE("conflicting ground truth within an instance") {
  std::vector<EvalRow> rows = {
      fixtures::make_row(1, {0.4, 0.6}, 1.0, "bad", 0),
      fixtures::make_row(0, {0.4, 0.6}, 1.0, "bad", 10),
      fixtures::make_row(1, {0.2, 0.8}, 1.0, "ok", 0),
  };
  SUBCASE("strict grouping throws with the ped_id") {
    try {
      group_instances(rows);
      FAIL("expected InconsistentGroundTruth");
    } catch (const InconsistentGroundTruth& e) {
      CHECK(e.ped_id() == "bad");
    }
  }
  SUBCASE("skip grouping drops the instance and reports it") {
    std::vector<std::string> skipped;
    const auto series = group_instances_skip(rows, &skipped);
    REQUIRE(series.size() == 1);
    CHECK(series[0].ped_id == "ok");
    CHECK(skipped == std::vector<std::string>{"bad"});
  }
  SUBCASE("skip grouping requires a sink") {
    CHECK_THROWS_AS(group_instances_skip(rows, nullptr), ValidationError);
  }
}

TEST_CASE("mixed confidence arity within an instance is rejected") {
  std::vector<EvalRow> rows = {
      fixtures::make_row(1, {0.4, 0.6}, 1.0, "p", 0),
      fixtures::make_row(1, {0.2, 0.3, 0.5}, 1.0, "p", 10),
  };
  CHECK_THROWS_AS(group_instances(rows), ArityMismatch);
}

TEST_CASE("soft prediction averages confidences") {
  SUBCASE("mean flips the verdict of the last window") {
    const auto s = make_series(
        "p", 1, {{0.6, 0.4}, {0.2, 0.8}, {0.1, 0.9}});
    const SoftPrediction soft = soft_prediction(s);
    CHECK(soft.mean_conf[0] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(soft.mean_conf[1] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(soft.label == 1);
  }
  SUBCASE("singleton series returns its only argmax") {
    CHECK(soft_prediction(make_series("p", 0, {{0.9, 0.1}})).label == 0);
  }
  SUBCASE("mean ties break to the lowest class") {
    CHECK(soft_prediction(
              make_series("p", 0, {{0.6, 0.4}, {0.4, 0.6}})).label == 0);
  }
  SUBCASE("empty series throws") {
    InstanceSeries s;
    s.ped_id = "p";
    CHECK_THROWS_AS(soft_prediction(s), EmptyInput);
  }
}

TEST_CASE("hard prediction demands unanimity") {
  SUBCASE("unanimous series keeps the label") {
    CHECK(hard_prediction(make_series(
              "p", 0, {{0.2, 0.8}, {0.4, 0.6}})) == 1);
  }
  SUBCASE("any flip yields the designated wrong label") {
    const auto s = make_series("p", 1, {{0.2, 0.8}, {0.6, 0.4}});
    CHECK(hard_prediction(s) == 0);  // (1 + 1) mod 2
    const auto s0 = make_series("p", 0, {{0.2, 0.8}, {0.6, 0.4}});
    CHECK(hard_prediction(s0) == 1);  // (0 + 1) mod 2
  }
  SUBCASE("offset wraps modulo the arity") {
    const auto s = make_series(
        "p", 2, {{0.2, 0.3, 0.5}, {0.6, 0.3, 0.1}});
    CHECK(hard_prediction(s, 1) == 0);   // (2 + 1) mod 3
    CHECK(hard_prediction(s, 2) == 1);   // (2 + 2) mod 3
    CHECK(hard_prediction(s, -1) == 1);  // -1 wraps to offset 2
    CHECK(hard_prediction(s, 4) == 0);   // 4 wraps to offset 1
    // Offset 0 would mark the instance correct; it falls back to 1.
    CHECK(hard_prediction(s, 3) == 0);
  }
}

TEST_CASE("confidence delta over consecutive windows") {
  const auto s = make_series(
      "p", 1, {{0.1, 0.9}, {0.3, 0.7}, {0.2, 0.8}});
  const ConfDelta d = confidence_delta(s, 1);
  CHECK(d.max_delta == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(d.avg_delta == doctest::Approx(0.15).epsilon(1e-12));

  const ConfDelta single =
      confidence_delta(make_series("p", 0, {{0.5, 0.5}}), 0);
  CHECK(single.max_delta == 0.0);
  CHECK(single.avg_delta == 0.0);

  CHECK_THROWS_AS(confidence_delta(s, 2), ValidationError);
}

TEST_CASE("instance report separates soft from hard accuracy") {
  const auto series = group_instances(fig_rows());
  const InstanceReport rep = instance_report(series, 2, 1, 1, true);
  CHECK(rep.n_instances == 4);
  // Soft credits the two instances whose mean lands on the truth.
  CHECK(rep.soft.acc == doctest::Approx(0.5).epsilon(1e-12));
  // Hard only credits the stable correct one.
  CHECK(rep.hard.acc == doctest::Approx(0.25).epsilon(1e-12));

  CHECK(rep.conf_delta.max_delta == doctest::Approx(0.225).epsilon(1e-12));
  CHECK(rep.conf_delta.avg_delta == doctest::Approx(0.21875).epsilon(1e-12));

  REQUIRE(rep.per_class_delta.size() == 2);
  CHECK(rep.per_class_delta[0].max_delta ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(rep.per_class_delta[0].avg_delta ==
        doctest::Approx(0.19375).epsilon(1e-12));
  CHECK(rep.per_class_delta[1].max_delta ==
        doctest::Approx(0.225).epsilon(1e-12));

  // Without the flag the per-class block stays empty.
  CHECK(instance_report(series, 2, 1).per_class_delta.empty());
}

TEST_CASE("singleton instances collapse cleanly") {
  std::vector<EvalRow> rows = {fixtures::make_row(1, {0.3, 0.7}, 1.0, "p", 0)};
  const InstanceReport rep = instance_report(group_instances(rows), 2, 1);
  CHECK(rep.n_instances == 1);
  CHECK(rep.soft.acc == 1.0);
  CHECK(rep.hard.acc == 1.0);
  CHECK(rep.conf_delta.max_delta == 0.0);
  CHECK(rep.conf_delta.avg_delta == 0.0);
}

TEST_CASE("instance_report rejects empty input") {
  CHECK_THROWS_AS(instance_report({}, 2, 1), EmptyInput);
}

TEST_CASE("a unanimous hard answer implies the same soft answer") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> len(1, 8);
  std::uniform_real_distribution<double> conf(0.0, 1.0);
  int unanimous = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int k = trial % 2 == 0 ? 2 : 3;
    std::vector<std::vector<double>> confs(static_cast<std::size_t>(len(rng)));
    for (auto& c : confs) {
      c.resize(static_cast<std::size_t>(k));
      for (double& v : c) {
        v = conf(rng);
      }
    }
    const auto s = make_series("p", 0, std::move(confs));
    const int first = argmax_class(s.samples.front().second);
    const bool all_same =
        std::all_of(s.samples.begin(), s.samples.end(), [&](const auto& p) {
          return argmax_class(p.second) == first;
        });
    if (!all_same) {
      continue;
    }
    ++unanimous;
    CHECK(hard_prediction(s) == first);
    CHECK(soft_prediction(s).label == first);
  }
  CHECK(unanimous > 50);
}

TEST_CASE("report is invariant to input row order") {
  auto rows = fig_rows();
  std::mt19937 rng(1);
  std::shuffle(rows.begin(), rows.end(), rng);
  const InstanceReport a = instance_report(group_instances(rows), 2, 1, 1);
  const InstanceReport b =
      instance_report(group_instances(fig_rows()), 2, 1, 1);
  CHECK(a.soft.acc == b.soft.acc);
  CHECK(a.hard.acc == b.hard.acc);
  CHECK(a.conf_delta.max_delta == b.conf_delta.max_delta);
  CHECK(a.conf_delta.avg_delta == b.conf_delta.avg_delta);
}

TEST_CASE("delta bounds: max >= avg >= 0") {
  std::mt19937 rng(55);
  std::uniform_int_distribution<int> len(2, 10);
  std::uniform_real_distribution<double> conf(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<double>> confs(static_cast<std::size_t>(len(rng)));
    for (auto& c : confs) {
      c = {conf(rng), conf(rng)};
    }
    const ConfDelta d =
        confidence_delta(make_series("p", 0, std::move(confs)), 0);
    CHECK(d.max_delta >= d.avg_delta);
    CHECK(d.avg_delta >= 0.0);
    CHECK(d.max_delta <= 1.0);
  }
}

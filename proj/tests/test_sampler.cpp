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
#include <cmath>

#include <doctest.h>

#include "fixtures.hpp"
#include "pedeval/errors.hpp"
#include "pedeval/sampler.hpp"

using namespace pedeval;

namespace {
const SamplerConfig kCfg;
const RiskGridConfig kGrid;

std::vector<std::int64_t> ends(const std::vector<TaskSample>& samples) {
  std::vector<std::int64_t> out;
  for (const auto& s : samples) {
    out.push_back(s.obs_end);
  }
  return out;
}
}  // namespace

TEST_CASE("window_starts hand enumerations") {
  CHECK(kCfg.stride() == 10);
  CHECK(window_starts(0, 34, kCfg) == std::vector<std::int64_t>{0, 10, 20});
  CHECK(window_starts(0, 14, kCfg) == std::vector<std::int64_t>{0});
  CHECK(window_starts(0, 13, kCfg).empty());
  CHECK(window_starts(100, 134, kCfg) ==
        std::vector<std::int64_t>{100, 110, 120});
}

TEST_CASE("window count formula holds for L in 1..100") {
  for (std::int64_t len = 1; len <= 100; ++len) {
    const auto starts = window_starts(0, len - 1, kCfg);
    const std::int64_t expected =
        len < kCfg.obs_len ? 0 : (len - kCfg.obs_len) / kCfg.stride() + 1;
    CHECK(static_cast<std::int64_t>(starts.size()) == expected);
  }
}

TEST_CASE("full overlap settings never reduce the sample count") {
  for (std::int64_t len : {15, 40, 77, 100}) {
    std::size_t prev = 0;
    for (double overlap : {0.0, 0.2, 0.3, 0.5, 0.8, 0.95}) {
      SamplerConfig cfg;
      cfg.overlap_frac = overlap;
      const auto starts = window_starts(0, len - 1, cfg);
      CHECK(starts.size() >= prev);
      prev = starts.size();
    }
  }
}

TEST_CASE("intention sampling bins the probability") {
  auto inst = fixtures::make_instance("p1", 0, 35);
  SUBCASE("0.9 -> 3 CI samples") {
    inst.intention_prob = 0.9;
    const auto samples = sample_intention(inst, kCfg);
    REQUIRE(samples.size() == 3);
    for (const auto& s : samples) {
      CHECK(s.label == 2);
      CHECK(s.task == Task::intention);
      CHECK_FALSE(s.tte.has_value());
    }
    CHECK(samples[0].sample_id == "p1#0#intention");
    CHECK(samples[1].obs_start == 10);
    CHECK(samples[2].obs_end == 34);
  }
  SUBCASE("exactly one third -> UI (lower-inclusive bins)") {
    inst.intention_prob = 1.0 / 3.0;
    CHECK(sample_intention(inst, kCfg)[0].label == 1);
  }
  SUBCASE("0.0 -> NCI") {
    inst.intention_prob = 0.0;
    CHECK(sample_intention(inst, kCfg)[0].label == 0);
  }
  SUBCASE("2/3 -> CI (upper cut is lower-inclusive too)") {
    inst.intention_prob = 2.0 / 3.0;
    CHECK(sample_intention(inst, kCfg)[0].label == 2);
  }
}

TEST_CASE("intention sampling skips unannotated instances silently") {
  auto inst = fixtures::make_instance("p1", 0, 35);
  SUBCASE("no intention_prob") { inst.intention_prob.reset(); }
  SUBCASE("no exp_start_point") { inst.exp_start_point.reset(); }
  SUBCASE("no critical_point") { inst.critical_point.reset(); }
  CHECK(sample_intention(inst, kCfg).empty());
}

TEST_CASE("intention windows stay inside [exp_start, critical]") {
  auto inst = fixtures::make_instance("p1", 0, 60);
  inst.exp_start_point = 10;
  inst.critical_point = 40;
  const auto samples = sample_intention(inst, kCfg);
  REQUIRE(samples.size() == 2);
  CHECK(samples[0].obs_start == 10);
  CHECK(samples[1].obs_start == 20);
  for (const auto& s : samples) {
    CHECK(s.obs_start >= 10);
    CHECK(s.obs_end <= 40);
  }
}

TEST_CASE("action sampling applies the TTE filter") {
  auto inst = fixtures::make_instance("p1", 0, 120);
  inst.crossing_point = 119;

  SUBCASE("hand-enumerated obs_end set for crossing_point 120") {
    // The event lands one frame past the track; windows are unaffected.
    inst.frames.push_back(fixtures::make_frame(120));
    inst.crossing_point = 120;
    inst.critical_point = 120;
    const auto samples = sample_action(inst, kCfg);
    CHECK(ends(samples) ==
          std::vector<std::int64_t>{34, 44, 54, 64, 74, 84});
    std::vector<std::int64_t> ttes;
    for (const auto& s : samples) {
      REQUIRE(s.tte.has_value());
      ttes.push_back(*s.tte);
    }
    CHECK(ttes == std::vector<std::int64_t>{86, 76, 66, 56, 46, 36});
    for (const auto& s : samples) {
      CHECK(s.label == 1);
    }
  }
  SUBCASE("keep_long_tte keeps tte > tte_max") {
    inst.frames.push_back(fixtures::make_frame(120));
    inst.crossing_point = 120;
    inst.critical_point = 120;
    SamplerConfig cfg;
    cfg.keep_long_tte = true;
    const auto samples = sample_action(inst, cfg);
    CHECK(ends(samples) ==
          std::vector<std::int64_t>{14, 24, 34, 44, 54, 64, 74, 84});
  }
  SUBCASE("everything below tte_min drops out") {
    auto short_inst = fixtures::make_instance("p1", 0, 44);
    short_inst.crossing_point = 43;
    // Windows end at 14, 24, 34 -> tte 29, 19, 9, all below 30.
    CHECK(sample_action(short_inst, kCfg).empty());
  }
  SUBCASE("non-crossing instances label NC") {
    auto nc = fixtures::make_instance("p1", 0, 120, false);
    nc.crossing_point = 119;
    const auto samples = sample_action(nc, kCfg);
    REQUIRE(!samples.empty());
    for (const auto& s : samples) {
      CHECK(s.label == 0);
    }
  }
}

TEST_CASE("risk sampling reads the bbox at the horizon target") {
  pedeval::VideoMeta video;
  video.video_id = "vid_a";
  video.width = 1920;
  video.height = 1080;

  auto inst = fixtures::make_instance("p1", 0, 120);
  // Distinct region per frame block: frames >= 100 sit in region 1.
  for (auto& f : inst.frames) {
    const double cx = f.frame_index >= 100 ? 80.0 : 959.5;
    f.bbox = {cx - 20.0, 500.0, cx + 20.0, 600.0};
  }

  SUBCASE("target frame annotated") {
    const auto samples = sample_risk(inst, video, kCfg, kGrid);
    REQUIRE(!samples.empty());
    // First window [0,14] targets frame 104 -> center 80 -> region 1.
    CHECK(samples[0].obs_end == 14);
    CHECK(samples[0].label == 0);
  }
  SUBCASE("pedestrian gone at target -> last bbox") {
    auto short_inst = fixtures::make_instance("p1", 0, 61);
    short_inst.crossing_point = 60;
    short_inst.critical_point = 60;
    for (auto& f : short_inst.frames) {
      f.bbox = {940.0, 500.0, 979.0, 600.0};  // center 959.5 -> region 6
    }
    const auto samples = sample_risk(short_inst, video, kCfg, kGrid);
    REQUIRE(!samples.empty());
    for (const auto& s : samples) {
      CHECK(s.label == 5);
    }
  }
}

TEST_CASE("aggregate_context averages the window") {
  auto inst = fixtures::make_instance("p1", 0, 15);
  SUBCASE("mean scale over a 3-frame window") {
    inst.frames[0].bbox = {0.0, 0.0, 10.0, 100.0};
    inst.frames[1].bbox = {0.0, 0.0, 10.0, 110.0};
    inst.frames[2].bbox = {0.0, 0.0, 10.0, 120.0};
    const auto ctx = aggregate_context(inst, 0, 2);
    CHECK(ctx.mean_scale == doctest::Approx(110.0));
  }
  SUBCASE("walking 8 of 15 -> walking") {
    for (std::size_t i = 0; i < inst.frames.size(); ++i) {
      inst.frames[i].walking = i < 8;
    }
    CHECK(aggregate_context(inst, 0, 14).state == PedState::walking);
    inst.frames[7].walking = false;  // now 7 of 15
    CHECK(aggregate_context(inst, 0, 14).state == PedState::standing);
  }
  SUBCASE("signal majority, forbid wins ties") {
    for (std::size_t i = 0; i < inst.frames.size(); ++i) {
      inst.frames[i].signal_state =
          i < 7 ? SignalState::forbid : SignalState::none;
    }
    CHECK(aggregate_context(inst, 0, 14).signal == SignalState::none);
    // 7 forbid vs 7 allow vs 1 none: tie between forbid and allow.
    for (std::size_t i = 0; i < 14; ++i) {
      inst.frames[i].signal_state =
          i < 7 ? SignalState::forbid : SignalState::allow;
    }
    inst.frames[14].signal_state = SignalState::none;
    CHECK(aggregate_context(inst, 0, 14).signal == SignalState::forbid);
  }
  SUBCASE("road type copied, speed averaged") {
    for (auto& f : inst.frames) {
      f.ego_speed = 10.0;
    }
    inst.frames[0].ego_speed = 40.0;
    const auto ctx = aggregate_context(inst, 0, 14);
    CHECK(ctx.mean_speed == doctest::Approx((40.0 + 14.0 * 10.0) / 15.0));
    CHECK(ctx.road_type == RoadType::two_way);
  }
  SUBCASE("empty window throws") {
    CHECK_THROWS_AS(aggregate_context(inst, 100, 114), ValidationError);
  }
}

TEST_CASE("windows without observations are skipped") {
  // Frames 0..14 and 40..69 exist; window [20,34] falls entirely in the
  // gap and is dropped, while partially observed windows survive.
  pedeval::PedestrianInstance inst;
  inst.ped_id = "gap";
  inst.video_id = "vid_a";
  for (std::int64_t i = 0; i <= 14; ++i) {
    inst.frames.push_back(fixtures::make_frame(i));
  }
  for (std::int64_t i = 40; i <= 69; ++i) {
    inst.frames.push_back(fixtures::make_frame(i));
  }
  inst.intention_prob = 0.9;
  inst.exp_start_point = 0;
  inst.critical_point = 69;
  inst.crossing_point = 69;
  const auto samples = sample_intention(inst, kCfg);
  std::vector<std::int64_t> starts;
  for (const auto& s : samples) {
    starts.push_back(s.obs_start);
  }
  CHECK(starts == std::vector<std::int64_t>{0, 10, 30, 40, 50});
}

TEST_CASE("sampling is deterministic and windows stay within the track") {
  auto inst = fixtures::make_instance("p1", 5, 77);
  inst.crossing_point = 81;
  const auto a = sample_action(inst, kCfg);
  const auto b = sample_action(inst, kCfg);
  CHECK(a == b);
  for (const auto& s : a) {
    CHECK(s.obs_start >= inst.first_frame());
    CHECK(s.obs_end <= inst.last_frame());
    CHECK(s.obs_end - s.obs_start + 1 == kCfg.obs_len);
    CHECK(*s.tte >= kCfg.tte_min);
    CHECK(*s.tte <= kCfg.tte_max);
  }
}

TEST_CASE("samples round-trip through JSONL") {
  pedeval::Dataset ds = fixtures::make_dataset(
      {fixtures::make_instance("p1", 0, 60),
       fixtures::make_instance("p2", 10, 45, false)});
  validate_dataset(ds);
  for (Task task : {Task::intention, Task::action, Task::risk}) {
    const auto samples = sample_dataset(ds, task, kCfg, kGrid, 1);
    const std::string text = samples_to_jsonl(samples);
    CHECK(samples_from_jsonl(text) == samples);
  }
}

TEST_CASE("risk labels serialize as 1-based regions") {
  CHECK(label_to_json(Task::risk, 0) == nlohmann::json(1));
  CHECK(label_to_json(Task::risk, 11) == nlohmann::json(12));
  CHECK(label_from_json(Task::risk, nlohmann::json(6)) == 5);
  CHECK(label_to_json(Task::intention, 2) == nlohmann::json("CI"));
  CHECK(label_to_json(Task::action, 1) == nlohmann::json("C"));
  CHECK(label_name(Task::risk, 0, kGrid) == "region_1");
}

TEST_CASE("malformed JSONL reports the line number") {
  try {
    samples_from_jsonl("{\"bad\": true}\n");
    FAIL("expected MalformedLine");
  } catch (const MalformedLine& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("sampler config validation") {
  SamplerConfig cfg;
  cfg.obs_len = 0;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = SamplerConfig{};
  cfg.overlap_frac = 1.0;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = SamplerConfig{};
  cfg.tte_min = 91;
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  cfg = SamplerConfig{};
  cfg.intention_bins = {0.5, 0.4};
  CHECK_THROWS_AS(validate(cfg), ValidationError);
  // Tiny windows with high overlap still make progress (stride >= 1).
  cfg = SamplerConfig{};
  cfg.obs_len = 2;
  cfg.overlap_frac = 0.9;
  CHECK(cfg.stride() == 1);
}

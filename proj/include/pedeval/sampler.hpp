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

#ifndef PEDEVAL_SAMPLER_HPP_
#define PEDEVAL_SAMPLER_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedeval/annotation.hpp"
#include "pedeval/risk_grid.hpp"

namespace pedeval {

enum class Task { intention, action, risk };

std::string to_string(Task t);
Task task_from_string(const std::string& s);

// Class count: 3 (NCI/UI/CI), 2 (NC/C), or n_regions.
int task_arity(Task t, const RiskGridConfig& grid);

enum class PedState { walking, standing };

std::string to_string(PedState s);

struct SamplerConfig {
  int obs_len = 15;           // frames per observation window
  double overlap_frac = 0.3;  // fraction of obs_len shared by adjacent windows
  int tte_min = 30;           // frames
  int tte_max = 90;           // frames
  int horizon = 90;           // risk prediction horizon, frames
  std::array<double, 2> intention_bins{1.0 / 3.0, 2.0 / 3.0};
  // Keep action samples with tte > tte_max (tte < tte_min always excluded).
  bool keep_long_tte = false;
  // When false, action and risk windows are restricted to
  // [exp_start_point, critical_point] like intention windows.
  bool span_full_track = true;

  int stride() const {
    return std::max(
        1, static_cast<int>(std::floor(obs_len * (1.0 - overlap_frac))));
  }

  bool operator==(const SamplerConfig&) const = default;
};

void validate(const SamplerConfig& cfg);

// Window-averaged context used for scenario slicing.
struct ScenarioContext {
  double mean_scale = 0.0;  // mean bbox height, pixels
  PedState state = PedState::standing;
  double mean_speed = 0.0;  // km/h
  SignalState signal = SignalState::none;
  RoadType road_type = RoadType::unknown;

  bool operator==(const ScenarioContext&) const = default;
};

// One fixed-length observation window cut from an instance's track.
// label is a 0-based class index for every task; for risk it stores
// region - 1 so that all metric code sees contiguous classes.
struct TaskSample {
  std::string sample_id;  // ped_id + "#" + obs_start + "#" + task
  std::string ped_id;
  Task task = Task::intention;
  std::int64_t obs_start = 0;
  std::int64_t obs_end = 0;  // inclusive
  std::optional<std::int64_t> tte;
  int label = 0;
  ScenarioContext context;

  bool operator==(const TaskSample&) const = default;
};

// Human-readable class name: NCI/UI/CI, NC/C, region_1..region_N.
std::string label_name(Task t, int label, const RiskGridConfig& grid);

// JSONL label value: class name for intention/action, 1-based region int
// for risk.
nlohmann::json label_to_json(Task t, int label);
int label_from_json(Task t, const nlohmann::json& j);

// Window start frames: track_first, track_first + stride, ... keeping only
// windows [s, s + obs_len - 1] that fit within [track_first, track_last].
std::vector<std::int64_t> window_starts(std::int64_t track_first,
                                        std::int64_t track_last,
                                        const SamplerConfig& cfg);

// Means of scale/speed, majority signal (tie precedence forbid > allow >
// none), walking iff mean walking flag > 0.5. Throws ValidationError when
// the window contains no observations.
ScenarioContext aggregate_context(const PedestrianInstance& inst,
                                  std::int64_t obs_start,
                                  std::int64_t obs_end);

std::vector<TaskSample> sample_intention(const PedestrianInstance& inst,
                                         const SamplerConfig& cfg);
std::vector<TaskSample> sample_action(const PedestrianInstance& inst,
                                      const SamplerConfig& cfg);
std::vector<TaskSample> sample_risk(const PedestrianInstance& inst,
                                    const VideoMeta& video,
                                    const SamplerConfig& cfg,
                                    const RiskGridConfig& grid);

// All samples of one task across the dataset; instances processed in order
// (parallelizable, output independent of thread count).
std::vector<TaskSample> sample_dataset(const Dataset& ds, Task task,
                                       const SamplerConfig& cfg,
                                       const RiskGridConfig& grid,
                                       int threads = 0);

nlohmann::json sample_to_json(const TaskSample& s);
TaskSample sample_from_json(const nlohmann::json& j);
std::string samples_to_jsonl(const std::vector<TaskSample>& samples);
std::vector<TaskSample> samples_from_jsonl(const std::string& text);

}  // namespace pedeval

#endif  // PEDEVAL_SAMPLER_HPP_

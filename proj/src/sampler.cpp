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

#include "pedeval/sampler.hpp"

#include <algorithm>
#include <sstream>

#include "pedeval/canonical_json.hpp"
#include "pedeval/errors.hpp"
#include "pedeval/parallel.hpp"

namespace pedeval {

namespace {

using nlohmann::json;

const char* const kIntentionNames[3] = {"NCI", "UI", "CI"};
const char* const kActionNames[2] = {"NC", "C"};

std::string make_sample_id(const std::string& ped_id, std::int64_t obs_start,
                           Task task) {
  return ped_id + "#" + std::to_string(obs_start) + "#" + to_string(task);
}

// Iterators over the observations whose frame_index lies in
// [obs_start, obs_end].
std::pair<std::vector<FrameObservation>::const_iterator,
          std::vector<FrameObservation>::const_iterator>
window_range(const PedestrianInstance& inst, std::int64_t obs_start,
             std::int64_t obs_end) {
  const auto lo = std::lower_bound(
      inst.frames.begin(), inst.frames.end(), obs_start,
      [](const FrameObservation& f, std::int64_t v) {
        return f.frame_index < v;
      });
  const auto hi = std::upper_bound(
      inst.frames.begin(), inst.frames.end(), obs_end,
      [](std::int64_t v, const FrameObservation& f) {
        return v < f.frame_index;
      });
  return {lo, hi};
}

std::optional<ScenarioContext> try_aggregate(const PedestrianInstance& inst,
                                             std::int64_t obs_start,
                                             std::int64_t obs_end) {
  const auto [lo, hi] = window_range(inst, obs_start, obs_end);
  const auto n = static_cast<std::int64_t>(hi - lo);
  if (n == 0) {
    return std::nullopt;
  }
  double sum_scale = 0.0;
  double sum_speed = 0.0;
  std::int64_t walking = 0;
  std::int64_t signal_counts[3] = {0, 0, 0};
  for (auto it = lo; it != hi; ++it) {
    sum_scale += it->bbox_height();
    sum_speed += it->ego_speed;
    walking += it->walking ? 1 : 0;
    signal_counts[static_cast<int>(it->signal_state)] += 1;
  }
  ScenarioContext ctx;
  ctx.mean_scale = sum_scale / static_cast<double>(n);
  ctx.mean_speed = sum_speed / static_cast<double>(n);
  ctx.state = 2 * walking > n ? PedState::walking : PedState::standing;
  // Majority vote; ties resolve by enum order forbid > allow > none.
  int best = 0;
  for (int s = 1; s < 3; ++s) {
    if (signal_counts[s] > signal_counts[best]) {
      best = s;
    }
  }
  ctx.signal = static_cast<SignalState>(best);
  ctx.road_type = inst.road_type;
  return ctx;
}

// Windows over [first, last] that contain at least one observation, with
// their aggregated context.
struct Window {
  std::int64_t start;
  std::int64_t end;
  ScenarioContext context;
};

std::vector<Window> observed_windows(const PedestrianInstance& inst,
                                     std::int64_t first, std::int64_t last,
                                     const SamplerConfig& cfg) {
  std::vector<Window> out;
  for (const std::int64_t s : window_starts(first, last, cfg)) {
    const std::int64_t e = s + cfg.obs_len - 1;
    if (auto ctx = try_aggregate(inst, s, e)) {
      out.push_back(Window{s, e, *ctx});
    }
  }
  return out;
}

// Track span for action/risk windows, honoring span_full_track.
std::optional<std::pair<std::int64_t, std::int64_t>> event_span(
    const PedestrianInstance& inst, const SamplerConfig& cfg) {
  if (cfg.span_full_track) {
    return std::make_pair(inst.first_frame(), inst.last_frame());
  }
  if (!inst.exp_start_point || !inst.critical_point) {
    return std::nullopt;
  }
  return std::make_pair(*inst.exp_start_point, *inst.critical_point);
}

}  // namespace

std::string to_string(Task t) {
  switch (t) {
    case Task::intention: return "intention";
    case Task::action: return "action";
    case Task::risk: return "risk";
  }
  return "intention";
}

Task task_from_string(const std::string& s) {
  if (s == "intention") return Task::intention;
  if (s == "action") return Task::action;
  if (s == "risk") return Task::risk;
  throw ValidationError("unknown task: '" + s + "'");
}

int task_arity(Task t, const RiskGridConfig& grid) {
  switch (t) {
    case Task::intention: return 3;
    case Task::action: return 2;
    case Task::risk: return grid.n_regions;
  }
  return 0;
}

std::string to_string(PedState s) {
  return s == PedState::walking ? "walking" : "standing";
}

void validate(const SamplerConfig& cfg) {
  if (cfg.obs_len < 1) {
    throw ValidationError("obs_len must be at least 1");
  }
  if (cfg.overlap_frac < 0.0 || cfg.overlap_frac >= 1.0) {
    throw ValidationError("overlap_frac must lie in [0, 1)");
  }
  if (cfg.tte_min > cfg.tte_max) {
    throw ValidationError("tte_min must not exceed tte_max");
  }
  if (cfg.horizon < 1) {
    throw ValidationError("horizon must be at least 1");
  }
  if (!(cfg.intention_bins[0] > 0.0 &&
        cfg.intention_bins[0] < cfg.intention_bins[1] &&
        cfg.intention_bins[1] < 1.0)) {
    throw ValidationError(
        "intention_bins must be strictly increasing within (0, 1)");
  }
}

std::string label_name(Task t, int label, const RiskGridConfig& grid) {
  switch (t) {
    case Task::intention:
      if (label >= 0 && label < 3) return kIntentionNames[label];
      break;
    case Task::action:
      if (label >= 0 && label < 2) return kActionNames[label];
      break;
    case Task::risk:
      if (label >= 0 && label < grid.n_regions) {
        return "region_" + std::to_string(label + 1);
      }
      break;
  }
  throw ValidationError("label " + std::to_string(label) +
                        " out of range for task " + to_string(t));
}

nlohmann::json label_to_json(Task t, int label) {
  switch (t) {
    case Task::intention:
      if (label >= 0 && label < 3) return kIntentionNames[label];
      break;
    case Task::action:
      if (label >= 0 && label < 2) return kActionNames[label];
      break;
    case Task::risk:
      return label + 1;
  }
  throw ValidationError("label " + std::to_string(label) +
                        " out of range for task " + to_string(t));
}

int label_from_json(Task t, const nlohmann::json& j) {
  if (t == Task::risk) {
    if (!j.is_number_integer()) {
      throw ValidationError("risk label must be a 1-based region integer");
    }
    return j.get<int>() - 1;
  }
  const std::string s = j.get<std::string>();
  if (t == Task::intention) {
    for (int i = 0; i < 3; ++i) {
      if (s == kIntentionNames[i]) return i;
    }
  } else {
    for (int i = 0; i < 2; ++i) {
      if (s == kActionNames[i]) return i;
    }
  }
  throw ValidationError("unknown label '" + s + "' for task " + to_string(t));
}

std::vector<std::int64_t> window_starts(std::int64_t track_first,
                                        std::int64_t track_last,
                                        const SamplerConfig& cfg) {
  validate(cfg);
  if (track_last < track_first) {
    throw ValidationError("track_last precedes track_first");
  }
  std::vector<std::int64_t> starts;
  const std::int64_t stride = cfg.stride();
  for (std::int64_t s = track_first; s + cfg.obs_len - 1 <= track_last;
       s += stride) {
    starts.push_back(s);
  }
  return starts;
}

ScenarioContext aggregate_context(const PedestrianInstance& inst,
                                  std::int64_t obs_start,
                                  std::int64_t obs_end) {
  auto ctx = try_aggregate(inst, obs_start, obs_end);
  if (!ctx) {
    throw ValidationError("window [" + std::to_string(obs_start) + ", " +
                          std::to_string(obs_end) + "] of instance '" +
                          inst.ped_id + "' contains no observations");
  }
  return *ctx;
}

std::vector<TaskSample> sample_intention(const PedestrianInstance& inst,
                                         const SamplerConfig& cfg) {
  validate(cfg);
  std::vector<TaskSample> out;
  if (!inst.intention_prob || !inst.exp_start_point || !inst.critical_point) {
    return out;
  }
  const double p = *inst.intention_prob;
  int label = 0;
  if (p >= cfg.intention_bins[1]) {
    label = 2;
  } else if (p >= cfg.intention_bins[0]) {
    label = 1;
  }
  for (const Window& w :
       observed_windows(inst, *inst.exp_start_point, *inst.critical_point,
                        cfg)) {
    TaskSample s;
    s.sample_id = make_sample_id(inst.ped_id, w.start, Task::intention);
    s.ped_id = inst.ped_id;
    s.task = Task::intention;
    s.obs_start = w.start;
    s.obs_end = w.end;
    s.label = label;
    s.context = w.context;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TaskSample> sample_action(const PedestrianInstance& inst,
                                      const SamplerConfig& cfg) {
  validate(cfg);
  std::vector<TaskSample> out;
  const auto span = event_span(inst, cfg);
  if (!span) {
    return out;
  }
  const int label = inst.crossing_label == CrossingLabel::crossing ? 1 : 0;
  for (const Window& w : observed_windows(inst, span->first, span->second,
                                          cfg)) {
    const std::int64_t tte = inst.crossing_point - w.end;
    if (tte < cfg.tte_min || (!cfg.keep_long_tte && tte > cfg.tte_max)) {
      continue;
    }
    TaskSample s;
    s.sample_id = make_sample_id(inst.ped_id, w.start, Task::action);
    s.ped_id = inst.ped_id;
    s.task = Task::action;
    s.obs_start = w.start;
    s.obs_end = w.end;
    s.tte = tte;
    s.label = label;
    s.context = w.context;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TaskSample> sample_risk(const PedestrianInstance& inst,
                                    const VideoMeta& video,
                                    const SamplerConfig& cfg,
                                    const RiskGridConfig& grid) {
  validate(cfg);
  validate(grid);
  std::vector<TaskSample> out;
  const auto span = event_span(inst, cfg);
  if (!span) {
    return out;
  }
  for (const Window& w : observed_windows(inst, span->first, span->second,
                                          cfg)) {
    const std::int64_t target = w.end + cfg.horizon;
    // Bbox at the target frame, or the last annotated one before it.
    const auto it = std::upper_bound(
        inst.frames.begin(), inst.frames.end(), target,
        [](std::int64_t v, const FrameObservation& f) {
          return v < f.frame_index;
        });
    if (it == inst.frames.begin()) {
      continue;
    }
    const FrameObservation& f = *(it - 1);
    TaskSample s;
    s.sample_id = make_sample_id(inst.ped_id, w.start, Task::risk);
    s.ped_id = inst.ped_id;
    s.task = Task::risk;
    s.obs_start = w.start;
    s.obs_end = w.end;
    s.label = assign_region(f.bbox_center_x(),
                            static_cast<double>(video.width), grid) -
              1;
    s.context = w.context;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TaskSample> sample_dataset(const Dataset& ds, Task task,
                                       const SamplerConfig& cfg,
                                       const RiskGridConfig& grid,
                                       int threads) {
  validate(cfg);
  validate(grid);
  const auto n = static_cast<std::int64_t>(ds.instances.size());
  std::vector<std::vector<TaskSample>> per_instance(n);
  parallel_for(n, threads, [&](std::int64_t i) {
    const PedestrianInstance& inst = ds.instances[static_cast<std::size_t>(i)];
    switch (task) {
      case Task::intention:
        per_instance[i] = sample_intention(inst, cfg);
        break;
      case Task::action:
        per_instance[i] = sample_action(inst, cfg);
        break;
      case Task::risk:
        per_instance[i] = sample_risk(inst, ds.video_for(inst), cfg, grid);
        break;
    }
  });
  std::vector<TaskSample> out;
  for (auto& chunk : per_instance) {
    out.insert(out.end(), std::make_move_iterator(chunk.begin()),
               std::make_move_iterator(chunk.end()));
  }
  return out;
}

nlohmann::json sample_to_json(const TaskSample& s) {
  json j;
  j["sample_id"] = s.sample_id;
  j["ped_id"] = s.ped_id;
  j["task"] = to_string(s.task);
  j["obs_start"] = s.obs_start;
  j["obs_end"] = s.obs_end;
  if (s.tte) {
    j["tte"] = *s.tte;
  }
  j["label"] = label_to_json(s.task, s.label);
  j["context"] = {{"mean_scale", s.context.mean_scale},
                  {"state", to_string(s.context.state)},
                  {"mean_speed", s.context.mean_speed},
                  {"signal", to_string(s.context.signal)},
                  {"road_type", to_string(s.context.road_type)}};
  return j;
}

TaskSample sample_from_json(const nlohmann::json& j) {
  TaskSample s;
  try {
    s.sample_id = j.at("sample_id").get<std::string>();
    s.ped_id = j.at("ped_id").get<std::string>();
    s.task = task_from_string(j.at("task").get<std::string>());
    s.obs_start = j.at("obs_start").get<std::int64_t>();
    s.obs_end = j.at("obs_end").get<std::int64_t>();
    if (j.contains("tte")) {
      s.tte = j.at("tte").get<std::int64_t>();
    }
    s.label = label_from_json(s.task, j.at("label"));
    const json& c = j.at("context");
    s.context.mean_scale = c.at("mean_scale").get<double>();
    s.context.mean_speed = c.at("mean_speed").get<double>();
    s.context.state = c.at("state").get<std::string>() == "walking"
                          ? PedState::walking
                          : PedState::standing;
    s.context.signal =
        signal_state_from_string(c.at("signal").get<std::string>());
    s.context.road_type =
        road_type_from_string(c.at("road_type").get<std::string>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed sample record: ") + e.what());
  }
  return s;
}

std::string samples_to_jsonl(const std::vector<TaskSample>& samples) {
  std::string out;
  for (const TaskSample& s : samples) {
    out += dump_canonical_line(sample_to_json(s));
    out += '\n';
  }
  return out;
}

std::vector<TaskSample> samples_from_jsonl(const std::string& text) {
  std::vector<TaskSample> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedLine(line_number, e.what());
    }
    try {
      out.push_back(sample_from_json(j));
    } catch (const ValidationError& e) {
      throw MalformedLine(line_number, e.what());
    }
  }
  return out;
}

}  // namespace pedeval

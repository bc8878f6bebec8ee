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

#include "pedeval/annotation.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "pedeval/canonical_json.hpp"
#include "pedeval/errors.hpp"

namespace pedeval {

namespace {

using nlohmann::json;

// Accumulates schema problems so a single read reports everything wrong
// with the file at once.
struct ViolationLog {
  std::vector<std::string> items;
  std::size_t dangling = 0;

  void add(std::string msg) { items.push_back(std::move(msg)); }
  void add_dangling(std::string msg) {
    ++dangling;
    items.push_back(std::move(msg));
  }
  void raise_if_any() const {
    if (items.empty()) {
      return;
    }
    std::string msg = "dataset schema validation failed (" +
                      std::to_string(items.size()) + " violation(s)): " +
                      items.front();
    if (items.size() > 1) {
      msg += " [+" + std::to_string(items.size() - 1) + " more]";
    }
    if (dangling == items.size()) {
      throw DanglingVideoRef(msg, items);
    }
    throw SchemaViolation(msg, items);
  }
};

template <typename T>
T parse_enum(const std::string& s,
             std::initializer_list<std::pair<const char*, T>> table,
             const char* what) {
  for (const auto& [name, value] : table) {
    if (s == name) {
      return value;
    }
  }
  throw ValidationError(std::string("unknown ") + what + ": '" + s + "'");
}

const json* find(const json& j, const char* key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

}  // namespace

std::string to_string(Occlusion v) {
  switch (v) {
    case Occlusion::none: return "none";
    case Occlusion::partial: return "partial";
    case Occlusion::full: return "full";
  }
  return "none";
}

std::string to_string(SignalState v) {
  switch (v) {
    case SignalState::forbid: return "forbid";
    case SignalState::allow: return "allow";
    case SignalState::none: return "none";
  }
  return "none";
}

std::string to_string(CrossingLabel v) {
  return v == CrossingLabel::crossing ? "crossing" : "non_crossing";
}

std::string to_string(RoadType v) {
  switch (v) {
    case RoadType::one_way: return "one_way";
    case RoadType::two_way: return "two_way";
    case RoadType::unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(Split v) {
  switch (v) {
    case Split::train: return "train";
    case Split::val: return "val";
    case Split::test: return "test";
  }
  return "test";
}

Occlusion occlusion_from_string(const std::string& s) {
  return parse_enum<Occlusion>(s,
                               {{"none", Occlusion::none},
                                {"partial", Occlusion::partial},
                                {"full", Occlusion::full}},
                               "occlusion");
}

SignalState signal_state_from_string(const std::string& s) {
  return parse_enum<SignalState>(s,
                                 {{"forbid", SignalState::forbid},
                                  {"allow", SignalState::allow},
                                  {"none", SignalState::none}},
                                 "signal_state");
}

CrossingLabel crossing_label_from_string(const std::string& s) {
  return parse_enum<CrossingLabel>(
      s,
      {{"crossing", CrossingLabel::crossing},
       {"non_crossing", CrossingLabel::non_crossing}},
      "crossing_label");
}

RoadType road_type_from_string(const std::string& s) {
  return parse_enum<RoadType>(s,
                              {{"one_way", RoadType::one_way},
                               {"two_way", RoadType::two_way},
                               {"unknown", RoadType::unknown}},
                              "road_type");
}

Split split_from_string(const std::string& s) {
  return parse_enum<Split>(
      s, {{"train", Split::train}, {"val", Split::val}, {"test", Split::test}},
      "split");
}

const VideoMeta& Dataset::video_for(const PedestrianInstance& inst) const {
  for (const auto& v : videos) {
    if (v.video_id == inst.video_id) {
      return v;
    }
  }
  throw ValidationError("instance " + inst.ped_id +
                        " references unknown video '" + inst.video_id + "'");
}

std::int64_t instance_duration(const PedestrianInstance& inst) {
  return static_cast<std::int64_t>(inst.frames.size());
}

void validate_dataset(Dataset& ds) {
  ViolationLog log;

  std::unordered_set<std::string> video_ids;
  for (const auto& v : ds.videos) {
    if (v.width <= 0 || v.height <= 0 || v.fps <= 0) {
      log.add("video '" + v.video_id + "': width/height/fps must be positive");
    }
    if (!video_ids.insert(v.video_id).second) {
      log.add("duplicate video_id '" + v.video_id + "'");
    }
  }

  std::unordered_set<std::string> ped_ids;
  for (auto& inst : ds.instances) {
    const std::string who = "instance '" + inst.ped_id + "'";
    if (!ped_ids.insert(inst.ped_id).second) {
      log.add("duplicate ped_id '" + inst.ped_id + "'");
    }
    if (!video_ids.count(inst.video_id)) {
      log.add_dangling(who + ": video_id '" + inst.video_id +
                       "' does not resolve");
    }
    if (inst.frames.empty()) {
      log.add(who + ": frames must be non-empty");
      continue;
    }
    std::stable_sort(inst.frames.begin(), inst.frames.end(),
                     [](const FrameObservation& a, const FrameObservation& b) {
                       return a.frame_index < b.frame_index;
                     });
    for (std::size_t i = 0; i < inst.frames.size(); ++i) {
      const auto& f = inst.frames[i];
      if (f.frame_index < 0) {
        log.add(who + ": negative frame_index " +
                std::to_string(f.frame_index));
      }
      if (i > 0 && f.frame_index == inst.frames[i - 1].frame_index) {
        log.add(who + ": duplicate frame_index " +
                std::to_string(f.frame_index));
      }
      if (f.bbox[0] > f.bbox[2] || f.bbox[1] > f.bbox[3]) {
        log.add(who + " frame " + std::to_string(f.frame_index) +
                ": bbox must satisfy x1<=x2, y1<=y2");
      }
      if (f.ego_speed < 0.0) {
        log.add(who + " frame " + std::to_string(f.frame_index) +
                ": ego_speed must be non-negative");
      }
    }
    if (inst.intention_prob &&
        (*inst.intention_prob < 0.0 || *inst.intention_prob > 1.0)) {
      log.add(who + ": intention_prob outside [0,1]");
    }
    const std::int64_t first = inst.first_frame();
    const std::int64_t last = inst.last_frame();
    if (inst.exp_start_point && inst.critical_point &&
        *inst.exp_start_point > *inst.critical_point) {
      log.add(who + ": exp_start_point > critical_point");
    }
    if (inst.exp_start_point &&
        (*inst.exp_start_point < first || *inst.exp_start_point > last)) {
      log.add(who + ": exp_start_point outside track");
    }
    if (inst.critical_point &&
        (*inst.critical_point < first || *inst.critical_point > last)) {
      log.add(who + ": critical_point outside track");
    }
    if (inst.crossing_point < first || inst.crossing_point > last) {
      log.add(who + ": crossing_point " + std::to_string(inst.crossing_point) +
              " outside track [" + std::to_string(first) + ", " +
              std::to_string(last) + "]");
    }
  }

  log.raise_if_any();
}

nlohmann::json dataset_to_json(const Dataset& ds) {
  json j;
  j["name"] = ds.name;
  j["split"] = to_string(ds.split);
  json videos = json::array();
  for (const auto& v : ds.videos) {
    videos.push_back({{"video_id", v.video_id},
                      {"width", v.width},
                      {"height", v.height},
                      {"fps", v.fps}});
  }
  j["videos"] = std::move(videos);
  json instances = json::array();
  for (const auto& inst : ds.instances) {
    json frames = json::array();
    for (const auto& f : inst.frames) {
      frames.push_back({{"frame_index", f.frame_index},
                        {"bbox", {f.bbox[0], f.bbox[1], f.bbox[2], f.bbox[3]}},
                        {"occlusion", to_string(f.occlusion)},
                        {"walking", f.walking},
                        {"signal_state", to_string(f.signal_state)},
                        {"ego_speed", f.ego_speed}});
    }
    json ji = {{"ped_id", inst.ped_id},
               {"video_id", inst.video_id},
               {"frames", std::move(frames)},
               {"crossing_label", to_string(inst.crossing_label)},
               {"crossing_point", inst.crossing_point},
               {"road_type", to_string(inst.road_type)}};
    if (inst.intention_prob) {
      ji["intention_prob"] = *inst.intention_prob;
    }
    if (inst.exp_start_point) {
      ji["exp_start_point"] = *inst.exp_start_point;
    }
    if (inst.critical_point) {
      ji["critical_point"] = *inst.critical_point;
    }
    instances.push_back(std::move(ji));
  }
  j["instances"] = std::move(instances);
  return j;
}

namespace {

// Field extraction with per-instance context; failures become schema
// violations, not hard stops, so the whole file gets reported.
class FieldReader {
 public:
  FieldReader(const json& j, std::string ctx, ViolationLog& log)
      : j_(j), ctx_(std::move(ctx)), log_(log) {}

  template <typename T>
  T get(const char* key, T fallback) {
    const json* v = find(j_, key);
    if (!v) {
      log_.add(ctx_ + ": missing field '" + key + "'");
      return fallback;
    }
    return coerce<T>(*v, key, fallback);
  }

  template <typename T>
  std::optional<T> get_optional(const char* key) {
    const json* v = find(j_, key);
    if (!v) {
      return std::nullopt;
    }
    return coerce<T>(*v, key, T{});
  }

  const json* array(const char* key) {
    const json* v = find(j_, key);
    if (!v || !v->is_array()) {
      log_.add(ctx_ + ": field '" + key + "' must be an array");
      return nullptr;
    }
    return v;
  }

 private:
  template <typename T>
  T coerce(const json& v, const char* key, T fallback) {
    try {
      return v.get<T>();
    } catch (const json::exception&) {
      log_.add(ctx_ + ": field '" + key + "' has wrong type");
      return fallback;
    }
  }

  const json& j_;
  std::string ctx_;
  ViolationLog& log_;
};

template <typename Enum>
Enum parse_enum_logged(Enum (*parser)(const std::string&),
                       const std::string& s, const std::string& ctx,
                       ViolationLog& log, Enum fallback) {
  try {
    return parser(s);
  } catch (const ValidationError& e) {
    log.add(ctx + ": " + e.what());
    return fallback;
  }
}

}  // namespace

Dataset dataset_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw MalformedFile("dataset root must be a JSON object");
  }
  ViolationLog log;
  Dataset ds;
  {
    FieldReader r(j, "dataset", log);
    ds.name = r.get<std::string>("name", "");
    ds.split = parse_enum_logged(split_from_string,
                                 r.get<std::string>("split", "test"),
                                 "dataset", log, Split::test);
  }

  if (const json* videos = FieldReader(j, "dataset", log).array("videos")) {
    for (const auto& jv : *videos) {
      FieldReader r(jv, "video", log);
      VideoMeta v;
      v.video_id = r.get<std::string>("video_id", "");
      v.width = r.get<int>("width", 0);
      v.height = r.get<int>("height", 0);
      v.fps = r.get<int>("fps", 30);
      ds.videos.push_back(std::move(v));
    }
  }

  if (const json* insts = FieldReader(j, "dataset", log).array("instances")) {
    for (const auto& ji : *insts) {
      FieldReader r(ji, "instance", log);
      PedestrianInstance inst;
      inst.ped_id = r.get<std::string>("ped_id", "");
      const std::string who = "instance '" + inst.ped_id + "'";
      FieldReader ri(ji, who, log);
      inst.video_id = ri.get<std::string>("video_id", "");
      inst.crossing_label = parse_enum_logged(
          crossing_label_from_string,
          ri.get<std::string>("crossing_label", "non_crossing"), who, log,
          CrossingLabel::non_crossing);
      inst.crossing_point = ri.get<std::int64_t>("crossing_point", 0);
      inst.road_type = parse_enum_logged(
          road_type_from_string, ri.get<std::string>("road_type", "unknown"),
          who, log, RoadType::unknown);
      inst.intention_prob = ri.get_optional<double>("intention_prob");
      inst.exp_start_point = ri.get_optional<std::int64_t>("exp_start_point");
      inst.critical_point = ri.get_optional<std::int64_t>("critical_point");
      if (const json* frames = ri.array("frames")) {
        for (const auto& jf : *frames) {
          const std::string fctx = who + " frame";
          FieldReader rf(jf, fctx, log);
          FrameObservation f;
          f.frame_index = rf.get<std::int64_t>("frame_index", 0);
          auto bbox = rf.get<std::vector<double>>("bbox", {});
          if (bbox.size() == 4) {
            std::copy(bbox.begin(), bbox.end(), f.bbox.begin());
          } else {
            log.add(fctx + " " + std::to_string(f.frame_index) +
                    ": bbox must have 4 entries");
          }
          f.occlusion = parse_enum_logged(
              occlusion_from_string, rf.get<std::string>("occlusion", "none"),
              fctx, log, Occlusion::none);
          f.walking = rf.get<bool>("walking", false);
          f.signal_state = parse_enum_logged(
              signal_state_from_string,
              rf.get<std::string>("signal_state", "none"), fctx, log,
              SignalState::none);
          f.ego_speed = rf.get<double>("ego_speed", 0.0);
          inst.frames.push_back(f);
        }
      }
      ds.instances.push_back(std::move(inst));
    }
  }

  log.raise_if_any();
  validate_dataset(ds);
  return ds;
}

Dataset read_dataset(const std::string& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MalformedFile("cannot parse " + path + ": " + e.what());
  }
  return dataset_from_json(j);
}

void write_dataset(const Dataset& ds, const std::string& path) {
  write_text_file(path, dump_canonical(dataset_to_json(ds)));
}

}  // namespace pedeval

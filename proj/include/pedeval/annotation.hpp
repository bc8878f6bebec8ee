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

#ifndef PEDEVAL_ANNOTATION_HPP_
#define PEDEVAL_ANNOTATION_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pedeval {

enum class Occlusion { none, partial, full };
enum class SignalState { forbid, allow, none };
enum class CrossingLabel { crossing, non_crossing };
enum class RoadType { one_way, two_way, unknown };
enum class Split { train, val, test };

struct VideoMeta {
  std::string video_id;
  int width = 0;   // pixels
  int height = 0;  // pixels
  int fps = 30;
  bool operator==(const VideoMeta&) const = default;
};

// One annotated frame of a pedestrian track. Scene and ego-vehicle
// context is duplicated per frame so window aggregation never has to
// look anything up.
struct FrameObservation {
  std::int64_t frame_index = 0;
  std::array<double, 4> bbox{};  // [x1, y1, x2, y2], pixels; may exceed image bounds
  Occlusion occlusion = Occlusion::none;
  bool walking = false;
  SignalState signal_state = SignalState::none;
  double ego_speed = 0.0;  // km/h

  double bbox_height() const { return bbox[3] - bbox[1]; }
  double bbox_center_x() const { return 0.5 * (bbox[0] + bbox[2]); }
  bool operator==(const FrameObservation&) const = default;
};

// A pedestrian's full annotated track plus its event keypoints.
// intention_prob is absent for datasets without usable intention labels;
// intention sampling skips such instances.
struct PedestrianInstance {
  std::string ped_id;
  std::string video_id;
  std::vector<FrameObservation> frames;  // sorted by frame_index after ingest
  std::optional<double> intention_prob;  // in [0, 1] when present
  CrossingLabel crossing_label = CrossingLabel::non_crossing;
  std::optional<std::int64_t> exp_start_point;
  std::optional<std::int64_t> critical_point;
  // Frame where crossing starts, or the last visible frame for
  // non-crossing pedestrians. Always within [first_frame, last_frame].
  std::int64_t crossing_point = 0;
  RoadType road_type = RoadType::unknown;

  std::int64_t first_frame() const { return frames.front().frame_index; }
  std::int64_t last_frame() const { return frames.back().frame_index; }
  bool operator==(const PedestrianInstance&) const = default;
};

struct Dataset {
  std::string name;
  Split split = Split::test;
  std::vector<VideoMeta> videos;
  std::vector<PedestrianInstance> instances;

  // Valid after validate_dataset; throws ValidationError on a dangling ref.
  const VideoMeta& video_for(const PedestrianInstance& inst) const;
  bool operator==(const Dataset&) const = default;
};

std::string to_string(Occlusion v);
std::string to_string(SignalState v);
std::string to_string(CrossingLabel v);
std::string to_string(RoadType v);
std::string to_string(Split v);

Occlusion occlusion_from_string(const std::string& s);
SignalState signal_state_from_string(const std::string& s);
CrossingLabel crossing_label_from_string(const std::string& s);
RoadType road_type_from_string(const std::string& s);
Split split_from_string(const std::string& s);

std::int64_t instance_duration(const PedestrianInstance& inst);

// Sorts every instance's frames by frame_index, then checks every
// invariant, collecting all violations before throwing SchemaViolation
// (or DanglingVideoRef when unresolved video ids are the only problem).
void validate_dataset(Dataset& ds);

// Canonical dataset file: UTF-8 JSON, floats written with six decimals,
// absent optionals omitted. read_dataset validates; the writer is
// byte-deterministic.
Dataset read_dataset(const std::string& path);
void write_dataset(const Dataset& ds, const std::string& path);

nlohmann::json dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const nlohmann::json& j);  // validates

}  // namespace pedeval

#endif  // PEDEVAL_ANNOTATION_HPP_

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

#ifndef PEDEVAL_TESTS_FIXTURES_HPP_
#define PEDEVAL_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "pedeval/annotation.hpp"
#include "pedeval/predlog.hpp"

namespace fixtures {

inline pedeval::FrameObservation make_frame(std::int64_t index,
                                            double center_x = 960.0,
                                            double height = 100.0) {
  pedeval::FrameObservation f;
  f.frame_index = index;
  f.bbox = {center_x - 20.0, 500.0, center_x + 20.0, 500.0 + height};
  f.walking = true;
  f.ego_speed = 12.0;
  return f;
}

// A straight-line track of `len` frames starting at `first`.
inline pedeval::PedestrianInstance make_instance(
    const std::string& ped_id, std::int64_t first, std::int64_t len,
    bool crossing = true, const std::string& video_id = "vid_a") {
  pedeval::PedestrianInstance inst;
  inst.ped_id = ped_id;
  inst.video_id = video_id;
  for (std::int64_t i = 0; i < len; ++i) {
    inst.frames.push_back(make_frame(first + i));
  }
  inst.intention_prob = 0.9;
  inst.crossing_label = crossing ? pedeval::CrossingLabel::crossing
                                 : pedeval::CrossingLabel::non_crossing;
  inst.exp_start_point = first;
  inst.critical_point = first + len - 1;
  inst.crossing_point = first + len - 1;
  inst.road_type = pedeval::RoadType::two_way;
  return inst;
}

inline pedeval::Dataset make_dataset(
    std::vector<pedeval::PedestrianInstance> instances) {
  pedeval::Dataset ds;
  ds.name = "fixture";
  ds.split = pedeval::Split::test;
  pedeval::VideoMeta video;
  video.video_id = "vid_a";
  video.width = 1920;
  video.height = 1080;
  ds.videos.push_back(video);
  ds.instances = std::move(instances);
  return ds;
}

// A bare metric row; sample_id fields are irrelevant for pure metric tests.
inline pedeval::EvalRow make_row(int gt, std::vector<double> conf,
                                 double weight = 1.0,
                                 const std::string& ped_id = "p0",
                                 std::int64_t obs_start = 0) {
  pedeval::EvalRow row;
  row.sample.ped_id = ped_id;
  row.sample.obs_start = obs_start;
  row.sample.obs_end = obs_start + 14;
  row.sample.label = gt;
  row.sample.sample_id =
      ped_id + "#" + std::to_string(obs_start) + "#test";
  row.pred.sample_id = row.sample.sample_id;
  row.pred.model = "m";
  row.pred.confidences = std::move(conf);
  row.weight = weight;
  return row;
}

}  // namespace fixtures

#endif  // PEDEVAL_TESTS_FIXTURES_HPP_

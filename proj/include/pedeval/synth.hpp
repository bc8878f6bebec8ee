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

#ifndef PEDEVAL_SYNTH_HPP_
#define PEDEVAL_SYNTH_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pedeval/predlog.hpp"

namespace pedeval {

enum class IntentionLaw { uniform, bimodal };
enum class PredictorKind { oracle, noisy, constant, anti_oracle };

std::string to_string(IntentionLaw law);
IntentionLaw intention_law_from_string(const std::string& s);
std::string to_string(PredictorKind kind);
PredictorKind predictor_from_string(const std::string& s);

struct SynthSpec {
  std::int64_t n_instances = 200;
  std::int64_t track_len_min = 40;
  // Kept at/below horizon + obs_len - 1 frames by default so the risk label
  // is constant across an instance's windows.
  std::int64_t track_len_max = 100;
  double crossing_frac = 0.5;
  IntentionLaw intention_law = IntentionLaw::uniform;
  PredictorKind predictor = PredictorKind::noisy;
  double noise_eps = 0.3;   // noisy: per-sample probability of a wrong label
  double const_conf = 0.6;  // constant: confidence put on class 0
  std::uint64_t seed = 7;
  std::string model_name;  // empty -> "synth_" + predictor
  int video_width = 1920;
  int video_height = 1080;
  int fps = 30;
};

void validate(const SynthSpec& spec);

std::string effective_model_name(const SynthSpec& spec);

// Seeded, reproducible dataset: linear-plus-noise bbox tracks, quota-based
// crossing assignment (round(n * crossing_frac) instances cross), per-frame
// walking/signal/speed context. Same spec, same bytes.
Dataset synth_dataset(const SynthSpec& spec);

// Prediction log covering every sample the default-config sampler yields
// for all three tasks (task order intention, action, risk).
std::vector<PredictionRecord> synth_predictions(const Dataset& ds,
                                                const SynthSpec& spec,
                                                const SamplerConfig& cfg,
                                                const RiskGridConfig& grid);

}  // namespace pedeval

#endif  // PEDEVAL_SYNTH_HPP_

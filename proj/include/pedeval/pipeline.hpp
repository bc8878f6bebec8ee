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

#ifndef PEDEVAL_PIPELINE_HPP_
#define PEDEVAL_PIPELINE_HPP_

#include <string>
#include <vector>

#include "pedeval/report.hpp"
#include "pedeval/synth.hpp"

namespace pedeval {

// Everything one evaluation run needs; mirrors the CLI flags one to one.
struct EvaluateRequest {
  std::string dataset_path;
  std::string predictions_path;
  Task task = Task::intention;
  std::string model;  // empty -> the log's only model
  SamplerConfig sampler;
  RiskGridConfig grid;
  double sigma_a = 0.3;
  int tte_max_ref = 0;         // 0 -> follow sampler.tte_max
  std::string scheme = "auto"; // auto | none | uniform | tte | risk_region
  JoinPolicy join_policy = JoinPolicy::strict;
  int threads = 0;
  int wrong_label_offset = 1;
  bool per_class_delta = false;
  bool export_weights = false;
  bool with_scenario = false;
  bool experimental_pairs = false;
  ScenarioBinning binning;
  bool skip_inconsistent_gt = true;  // false -> error out
};

// The weighting reference actually used for this request.
TteWeightConfig effective_tte_config(const EvaluateRequest& request);

// Scheme after resolving "auto" (tte for action, risk_region for risk,
// none for intention). Returns "none" when no weighted section applies.
std::string resolve_scheme(const EvaluateRequest& request);

// Effective configuration as embedded in every report; running the same
// request again from this echo reproduces the report byte for byte.
nlohmann::json config_echo_json(const EvaluateRequest& request);
EvaluateRequest request_from_echo(const nlohmann::json& echo);

MetricReport run_evaluate(const EvaluateRequest& request);

// Joint intention/action agreement for the same model and dataset; the
// task field of the request is ignored.
nlohmann::json run_agreement(const EvaluateRequest& request);

// Sample extraction without predictions; returns JSONL text.
std::string run_sample(const std::string& dataset_path, Task task,
                       const SamplerConfig& cfg, const RiskGridConfig& grid,
                       int threads);

struct SynthOutputs {
  std::int64_t n_instances = 0;
  std::int64_t n_predictions = 0;
};

// Writes the dataset and prediction log for a spec.
SynthOutputs run_synth(const SynthSpec& spec, const SamplerConfig& cfg,
                       const RiskGridConfig& grid,
                       const std::string& dataset_path,
                       const std::string& predictions_path);

}  // namespace pedeval

#endif  // PEDEVAL_PIPELINE_HPP_

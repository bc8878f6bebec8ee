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

#ifndef PEDEVAL_PREDLOG_HPP_
#define PEDEVAL_PREDLOG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pedeval/sampler.hpp"

namespace pedeval {

// One model output for one sample. Confidences are taken as-is (no softmax);
// ranked metrics only need a total order, argmax only needs a maximum.
struct PredictionRecord {
  std::string sample_id;
  std::string model;
  Task task = Task::intention;
  std::vector<double> confidences;

  bool operator==(const PredictionRecord&) const = default;
};

// Joined evaluation row. weight is filled by the weighting scheme; 1.0
// means unweighted.
struct EvalRow {
  TaskSample sample;
  PredictionRecord pred;
  double weight = 1.0;
};

enum class JoinPolicy { strict, inner };

std::string to_string(JoinPolicy p);
JoinPolicy join_policy_from_string(const std::string& s);

struct JoinCoverage {
  std::int64_t matched = 0;
  std::int64_t missing_prediction = 0;  // samples without a prediction
  std::int64_t orphan_prediction = 0;   // predictions without a sample

  bool operator==(const JoinCoverage&) const = default;
};

// Reads a JSONL prediction log. Confidence vectors must have the task's
// arity (risk arity comes from grid.n_regions) and values within [0, 1].
// Duplicate (model, sample_id) pairs are rejected.
std::vector<PredictionRecord> read_predictions(const std::string& path,
                                               const RiskGridConfig& grid);
std::vector<PredictionRecord> predictions_from_jsonl(
    const std::string& text, const RiskGridConfig& grid);

nlohmann::json prediction_to_json(const PredictionRecord& rec);
std::string predictions_to_jsonl(const std::vector<PredictionRecord>& recs);

// Model names present in a log, in first-appearance order.
std::vector<std::string> models_in(const std::vector<PredictionRecord>& recs);

// Joins samples with one model's predictions on sample_id. Rows follow the
// samples' order. strict raises MissingPrediction/OrphanPrediction listing
// every offending id; inner drops them and reports coverage.
std::vector<EvalRow> join(const std::vector<TaskSample>& samples,
                          const std::vector<PredictionRecord>& preds,
                          JoinPolicy policy, JoinCoverage* coverage = nullptr);

}  // namespace pedeval

#endif  // PEDEVAL_PREDLOG_HPP_

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

#include "pedeval/predlog.hpp"

#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "pedeval/canonical_json.hpp"
#include "pedeval/errors.hpp"

namespace pedeval {

namespace {

using nlohmann::json;

PredictionRecord parse_record(const json& j, std::size_t line_number,
                              const RiskGridConfig& grid) {
  if (!j.is_object()) {
    throw MalformedLine(line_number, "record must be a JSON object");
  }
  PredictionRecord rec;
  try {
    rec.sample_id = j.at("sample_id").get<std::string>();
    rec.model = j.at("model").get<std::string>();
    rec.task = task_from_string(j.at("task").get<std::string>());
    rec.confidences = j.at("confidences").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw MalformedLine(line_number, e.what());
  } catch (const ValidationError& e) {
    throw MalformedLine(line_number, e.what());
  }
  const int arity = task_arity(rec.task, grid);
  if (static_cast<int>(rec.confidences.size()) != arity) {
    throw ArityMismatch("line " + std::to_string(line_number) +
                        ": expected " + std::to_string(arity) +
                        " confidences for task " + to_string(rec.task) +
                        ", got " + std::to_string(rec.confidences.size()));
  }
  for (const double c : rec.confidences) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw MalformedLine(line_number, "confidence outside [0, 1]");
    }
  }
  return rec;
}

}  // namespace

std::string to_string(JoinPolicy p) {
  return p == JoinPolicy::strict ? "strict" : "inner";
}

JoinPolicy join_policy_from_string(const std::string& s) {
  if (s == "strict") return JoinPolicy::strict;
  if (s == "inner") return JoinPolicy::inner;
  throw ValidationError("unknown join policy: '" + s + "'");
}

std::vector<PredictionRecord> predictions_from_jsonl(
    const std::string& text, const RiskGridConfig& grid) {
  std::vector<PredictionRecord> out;
  std::unordered_set<std::string> seen;
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
    PredictionRecord rec = parse_record(j, line_number, grid);
    const std::string key = rec.model + "\x1f" + rec.sample_id;
    if (!seen.insert(key).second) {
      throw DuplicatePrediction("line " + std::to_string(line_number) +
                                ": duplicate prediction for sample '" +
                                rec.sample_id + "' by model '" + rec.model +
                                "'");
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<PredictionRecord> read_predictions(const std::string& path,
                                               const RiskGridConfig& grid) {
  return predictions_from_jsonl(read_text_file(path), grid);
}

nlohmann::json prediction_to_json(const PredictionRecord& rec) {
  json j;
  j["sample_id"] = rec.sample_id;
  j["model"] = rec.model;
  j["task"] = to_string(rec.task);
  j["confidences"] = rec.confidences;
  return j;
}

std::string predictions_to_jsonl(const std::vector<PredictionRecord>& recs) {
  std::string out;
  for (const PredictionRecord& rec : recs) {
    out += dump_canonical_line(prediction_to_json(rec));
    out += '\n';
  }
  return out;
}

std::vector<std::string> models_in(const std::vector<PredictionRecord>& recs) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const PredictionRecord& rec : recs) {
    if (seen.insert(rec.model).second) {
      out.push_back(rec.model);
    }
  }
  return out;
}

std::vector<EvalRow> join(const std::vector<TaskSample>& samples,
                          const std::vector<PredictionRecord>& preds,
                          JoinPolicy policy, JoinCoverage* coverage) {
  std::string model;
  std::unordered_map<std::string, const PredictionRecord*> by_id;
  by_id.reserve(preds.size());
  for (const PredictionRecord& p : preds) {
    if (model.empty()) {
      model = p.model;
    } else if (p.model != model) {
      throw ValidationError("join expects one model per call, got '" + model +
                            "' and '" + p.model + "'");
    }
    by_id.emplace(p.sample_id, &p);
  }

  std::vector<EvalRow> rows;
  rows.reserve(samples.size());
  std::vector<std::string> missing;
  std::unordered_set<std::string> used;
  for (const TaskSample& s : samples) {
    const auto it = by_id.find(s.sample_id);
    if (it == by_id.end()) {
      missing.push_back(s.sample_id);
      continue;
    }
    if (it->second->task != s.task) {
      throw JoinMismatch("sample '" + s.sample_id +
                         "': prediction task does not match sample task");
    }
    used.insert(s.sample_id);
    rows.push_back(EvalRow{s, *it->second, 1.0});
  }

  std::vector<std::string> orphans;
  for (const PredictionRecord& p : preds) {
    if (!used.count(p.sample_id)) {
      orphans.push_back(p.sample_id);
    }
  }

  if (policy == JoinPolicy::strict) {
    if (!missing.empty()) {
      throw MissingPrediction("strict join: " +
                                  std::to_string(missing.size()) +
                                  " sample(s) lack a prediction",
                              missing);
    }
    if (!orphans.empty()) {
      throw OrphanPrediction("strict join: " + std::to_string(orphans.size()) +
                                 " prediction(s) lack a sample",
                             orphans);
    }
  }
  if (coverage) {
    coverage->matched = static_cast<std::int64_t>(rows.size());
    coverage->missing_prediction = static_cast<std::int64_t>(missing.size());
    coverage->orphan_prediction = static_cast<std::int64_t>(orphans.size());
  }
  return rows;
}

}  // namespace pedeval

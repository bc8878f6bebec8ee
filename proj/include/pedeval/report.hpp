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

#ifndef PEDEVAL_REPORT_HPP_
#define PEDEVAL_REPORT_HPP_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pedeval/metrics_instance.hpp"
#include "pedeval/metrics_weighted.hpp"
#include "pedeval/scenario.hpp"

namespace pedeval {

// Risk reported over folded symmetric classes (post-argmax fold of both
// ground truth and prediction).
struct FoldedSection {
  int n_classes = 0;
  InstanceScalars scalars;  // acc/bacc/prec/recall/f1 over folded labels
};

struct WeightedSection {
  WeightScheme scheme = WeightScheme::uniform;
  ScalarMetrics metrics;
  std::vector<double> weights;  // exported only on request
  bool export_weights = false;
};

struct MetricReport {
  std::string model;
  Task task = Task::intention;
  std::int64_t n_samples = 0;
  std::int64_t n_instances = 0;
  std::int64_t n_inconsistent_skipped = 0;
  ClassificationSummary base;
  std::optional<WeightedSection> weighted;
  InstanceReport instance;
  std::optional<FoldedSection> risk_folded;
  std::optional<std::vector<ScenarioBin>> scenario;
  std::optional<AgreementReport> agreement;
  std::optional<JoinCoverage> join_coverage;
  RiskGridConfig grid;  // for class naming
  nlohmann::json config_echo;
};

nlohmann::json scalar_metrics_to_json(const ScalarMetrics& m);
nlohmann::json instance_scalars_to_json(const InstanceScalars& m);
nlohmann::json scenario_to_json(const std::vector<ScenarioBin>& bins);
nlohmann::json agreement_to_json(const AgreementReport& report);

nlohmann::json report_to_json(const MetricReport& report);

// Flat metric table, one metric per row.
std::string report_to_csv(const MetricReport& report);
// Human-oriented summary.
std::string report_to_markdown(const MetricReport& report);
// One row per factor bin.
std::string scenario_to_csv(const std::vector<ScenarioBin>& bins);

}  // namespace pedeval

#endif  // PEDEVAL_REPORT_HPP_

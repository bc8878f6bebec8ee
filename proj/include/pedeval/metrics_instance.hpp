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

#ifndef PEDEVAL_METRICS_INSTANCE_HPP_
#define PEDEVAL_METRICS_INSTANCE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "pedeval/metrics_core.hpp"

namespace pedeval {

// All samples of one pedestrian instance, in extraction (obs_start) order.
struct InstanceSeries {
  std::string ped_id;
  int gt_label = 0;
  std::vector<std::pair<std::int64_t, std::vector<double>>> samples;
};

// Groups rows by ped_id, sorted lexicographically; samples within a series
// sort by obs_start. Throws InconsistentGroundTruth when one instance's
// samples disagree on the label.
std::vector<InstanceSeries> group_instances(const std::vector<EvalRow>& rows);

// Same grouping, but inconsistently labeled instances are dropped and their
// ped_ids returned through `skipped` (sorted).
std::vector<InstanceSeries> group_instances_skip(
    const std::vector<EvalRow>& rows, std::vector<std::string>* skipped);

struct SoftPrediction {
  int label = 0;
  std::vector<double> mean_conf;
};

// Elementwise mean of the series' confidences; label = argmax (ties to the
// lowest index).
SoftPrediction soft_prediction(const InstanceSeries& series);

// If every sample's argmax agrees, that label; otherwise the designated
// wrong label (gt + wrong_label_offset) mod n_classes, which for binary
// tasks with offset 1 is 1 - gt.
int hard_prediction(const InstanceSeries& series, int wrong_label_offset = 1);

struct ConfDelta {
  double max_delta = 0.0;
  double avg_delta = 0.0;
};

// Mean and max absolute change of class cls confidence between consecutive
// samples; (0, 0) for singleton series.
ConfDelta confidence_delta(const InstanceSeries& series, int cls);

struct InstanceScalars {
  double acc = 0.0;
  double bacc = 0.0;
  double prec = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::vector<std::string> degenerate;
};

struct InstanceReport {
  std::int64_t n_instances = 0;
  InstanceScalars soft;
  InstanceScalars hard;
  // Means over instances of the per-instance max and avg delta, taken on
  // each instance's ground-truth class.
  ConfDelta conf_delta;
  // Per-class means over instances, filled when requested.
  std::vector<ConfDelta> per_class_delta;
};

// Instance-level metrics over all series. Per-instance work runs in
// parallel into per-instance slots; reductions walk instances in order.
InstanceReport instance_report(const std::vector<InstanceSeries>& series_list,
                               int n_classes, int threads = 0,
                               int wrong_label_offset = 1,
                               bool with_per_class_delta = false);

}  // namespace pedeval

#endif  // PEDEVAL_METRICS_INSTANCE_HPP_

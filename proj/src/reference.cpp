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

#include "pedeval/reference.hpp"

#include <algorithm>
#include <cmath>

#include "pedeval/errors.hpp"

namespace pedeval::reference {

ConfusionAccumulator accumulate_serial(const std::vector<EvalRow>& rows,
                                       int n_classes) {
  if (rows.empty()) {
    throw EmptyInput("accumulate_serial: no rows");
  }
  ConfusionAccumulator out(n_classes);
  for (const EvalRow& row : rows) {
    out.add(row.sample.label, argmax_class(row.pred.confidences), row.weight);
  }
  return out;
}

std::vector<PerClassRanked> per_class_ranked_serial(
    const std::vector<EvalRow>& rows, int n_classes) {
  if (rows.empty()) {
    throw EmptyInput("per_class_ranked_serial: no rows");
  }
  std::vector<PerClassRanked> out(static_cast<std::size_t>(n_classes));
  for (int c = 0; c < n_classes; ++c) {
    RankedScores scores = one_vs_rest_scores(rows, c);
    out[static_cast<std::size_t>(c)].ap = average_precision(scores);
    out[static_cast<std::size_t>(c)].auc = auc_half_credit(std::move(scores));
  }
  return out;
}

InstanceReport instance_report_serial(
    const std::vector<InstanceSeries>& series_list, int n_classes,
    int wrong_label_offset, bool with_per_class_delta) {
  if (series_list.empty()) {
    throw EmptyInput("instance_report_serial: no instances");
  }
  const auto n = static_cast<std::int64_t>(series_list.size());
  InstanceReport report;
  report.n_instances = n;
  ConfusionAccumulator soft_cm(n_classes);
  ConfusionAccumulator hard_cm(n_classes);
  double sum_max = 0.0;
  double sum_avg = 0.0;
  std::vector<double> class_sum_max(static_cast<std::size_t>(n_classes), 0.0);
  std::vector<double> class_sum_avg(static_cast<std::size_t>(n_classes), 0.0);
  for (const InstanceSeries& s : series_list) {
    soft_cm.add(s.gt_label, soft_prediction(s).label, 1.0);
    hard_cm.add(s.gt_label, hard_prediction(s, wrong_label_offset), 1.0);
    const ConfDelta d = confidence_delta(s, s.gt_label);
    sum_max += d.max_delta;
    sum_avg += d.avg_delta;
    if (with_per_class_delta) {
      for (int c = 0; c < n_classes; ++c) {
        const ConfDelta dc = confidence_delta(s, c);
        class_sum_max[static_cast<std::size_t>(c)] += dc.max_delta;
        class_sum_avg[static_cast<std::size_t>(c)] += dc.avg_delta;
      }
    }
  }
  const auto fill = [](const ConfusionAccumulator& cm, InstanceScalars& out) {
    out.acc = accuracy(cm);
    out.bacc = balanced_accuracy(cm, &out.degenerate);
    const PrecisionRecallF1 prf = reduced_prf(cm, &out.degenerate);
    out.prec = prf.prec;
    out.recall = prf.recall;
    out.f1 = prf.f1;
  };
  fill(soft_cm, report.soft);
  fill(hard_cm, report.hard);
  report.conf_delta.max_delta = sum_max / static_cast<double>(n);
  report.conf_delta.avg_delta = sum_avg / static_cast<double>(n);
  if (with_per_class_delta) {
    report.per_class_delta.resize(static_cast<std::size_t>(n_classes));
    for (int c = 0; c < n_classes; ++c) {
      report.per_class_delta[static_cast<std::size_t>(c)] = ConfDelta{
          class_sum_max[static_cast<std::size_t>(c)] / static_cast<double>(n),
          class_sum_avg[static_cast<std::size_t>(c)] /
              static_cast<double>(n)};
    }
  }
  return report;
}

std::vector<TaskSample> sample_dataset_serial(const Dataset& ds, Task task,
                                              const SamplerConfig& cfg,
                                              const RiskGridConfig& grid) {
  std::vector<TaskSample> out;
  for (const PedestrianInstance& inst : ds.instances) {
    std::vector<TaskSample> chunk;
    switch (task) {
      case Task::intention:
        chunk = sample_intention(inst, cfg);
        break;
      case Task::action:
        chunk = sample_action(inst, cfg);
        break;
      case Task::risk:
        chunk = sample_risk(inst, ds.video_for(inst), cfg, grid);
        break;
    }
    out.insert(out.end(), std::make_move_iterator(chunk.begin()),
               std::make_move_iterator(chunk.end()));
  }
  return out;
}

}  // namespace pedeval::reference

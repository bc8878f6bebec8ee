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

#include "pedeval/metrics_instance.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "pedeval/errors.hpp"
#include "pedeval/parallel.hpp"

namespace pedeval {

namespace {

std::vector<InstanceSeries> group_impl(const std::vector<EvalRow>& rows,
                                       std::vector<std::string>* skipped) {
  std::vector<InstanceSeries> series;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<bool> inconsistent;
  for (const EvalRow& row : rows) {
    const auto [it, inserted] =
        index.emplace(row.sample.ped_id, series.size());
    if (inserted) {
      InstanceSeries s;
      s.ped_id = row.sample.ped_id;
      s.gt_label = row.sample.label;
      series.push_back(std::move(s));
      inconsistent.push_back(false);
    }
    InstanceSeries& s = series[it->second];
    if (row.sample.label != s.gt_label) {
      if (!skipped) {
        throw InconsistentGroundTruth(
            s.ped_id, "instance '" + s.ped_id +
                          "' carries conflicting ground-truth labels");
      }
      inconsistent[it->second] = true;
    }
    if (!s.samples.empty() &&
        row.pred.confidences.size() != s.samples.front().second.size()) {
      throw ArityMismatch("instance '" + s.ped_id +
                          "' mixes confidence vector arities");
    }
    s.samples.emplace_back(row.sample.obs_start, row.pred.confidences);
  }

  std::vector<InstanceSeries> out;
  out.reserve(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (inconsistent[i]) {
      skipped->push_back(series[i].ped_id);
      continue;
    }
    out.push_back(std::move(series[i]));
  }
  std::sort(out.begin(), out.end(),
            [](const InstanceSeries& a, const InstanceSeries& b) {
              return a.ped_id < b.ped_id;
            });
  if (skipped) {
    std::sort(skipped->begin(), skipped->end());
  }
  for (InstanceSeries& s : out) {
    std::sort(s.samples.begin(), s.samples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  return out;
}

}  // namespace

std::vector<InstanceSeries> group_instances(const std::vector<EvalRow>& rows) {
  return group_impl(rows, nullptr);
}

std::vector<InstanceSeries> group_instances_skip(
    const std::vector<EvalRow>& rows, std::vector<std::string>* skipped) {
  if (!skipped) {
    throw ValidationError("group_instances_skip requires a skip sink");
  }
  return group_impl(rows, skipped);
}

SoftPrediction soft_prediction(const InstanceSeries& series) {
  if (series.samples.empty()) {
    throw EmptyInput("soft_prediction: series without samples");
  }
  const std::size_t arity = series.samples.front().second.size();
  SoftPrediction out;
  out.mean_conf.assign(arity, 0.0);
  for (const auto& [obs_start, conf] : series.samples) {
    for (std::size_t c = 0; c < arity; ++c) {
      out.mean_conf[c] += conf[c];
    }
  }
  const auto n = static_cast<double>(series.samples.size());
  for (double& v : out.mean_conf) {
    v /= n;
  }
  out.label = argmax_class(out.mean_conf);
  return out;
}

int hard_prediction(const InstanceSeries& series, int wrong_label_offset) {
  if (series.samples.empty()) {
    throw EmptyInput("hard_prediction: series without samples");
  }
  const int first = argmax_class(series.samples.front().second);
  for (const auto& [obs_start, conf] : series.samples) {
    if (argmax_class(conf) != first) {
      const int k = static_cast<int>(series.samples.front().second.size());
      const int off = ((wrong_label_offset % k) + k) % k;
      return (series.gt_label + (off == 0 ? 1 : off)) % k;
    }
  }
  return first;
}

ConfDelta confidence_delta(const InstanceSeries& series, int cls) {
  if (series.samples.empty()) {
    throw EmptyInput("confidence_delta: series without samples");
  }
  const auto idx = static_cast<std::size_t>(cls);
  if (idx >= series.samples.front().second.size()) {
    throw ValidationError("confidence_delta: class out of range");
  }
  ConfDelta d;
  const std::size_t n = series.samples.size();
  if (n < 2) {
    return d;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double step = std::abs(series.samples[i].second[idx] -
                                 series.samples[i + 1].second[idx]);
    sum += step;
    d.max_delta = std::max(d.max_delta, step);
  }
  d.avg_delta = sum / static_cast<double>(n - 1);
  return d;
}

InstanceReport instance_report(const std::vector<InstanceSeries>& series_list,
                               int n_classes, int threads,
                               int wrong_label_offset,
                               bool with_per_class_delta) {
  if (series_list.empty()) {
    throw EmptyInput("instance_report: no instances");
  }
  const auto n = static_cast<std::int64_t>(series_list.size());

  struct Slot {
    int soft_label = 0;
    int hard_label = 0;
    ConfDelta gt_delta;
    std::vector<ConfDelta> class_deltas;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(n));
  parallel_for(n, threads, [&](std::int64_t i) {
    const InstanceSeries& s = series_list[static_cast<std::size_t>(i)];
    Slot& slot = slots[static_cast<std::size_t>(i)];
    slot.soft_label = soft_prediction(s).label;
    slot.hard_label = hard_prediction(s, wrong_label_offset);
    slot.gt_delta = confidence_delta(s, s.gt_label);
    if (with_per_class_delta) {
      slot.class_deltas.resize(static_cast<std::size_t>(n_classes));
      for (int c = 0; c < n_classes; ++c) {
        slot.class_deltas[static_cast<std::size_t>(c)] =
            confidence_delta(s, c);
      }
    }
  });

  InstanceReport report;
  report.n_instances = n;
  ConfusionAccumulator soft_cm(n_classes);
  ConfusionAccumulator hard_cm(n_classes);
  double sum_max = 0.0;
  double sum_avg = 0.0;
  std::vector<double> class_sum_max(static_cast<std::size_t>(n_classes), 0.0);
  std::vector<double> class_sum_avg(static_cast<std::size_t>(n_classes), 0.0);
  for (std::int64_t i = 0; i < n; ++i) {
    const InstanceSeries& s = series_list[static_cast<std::size_t>(i)];
    const Slot& slot = slots[static_cast<std::size_t>(i)];
    soft_cm.add(s.gt_label, slot.soft_label, 1.0);
    hard_cm.add(s.gt_label, slot.hard_label, 1.0);
    sum_max += slot.gt_delta.max_delta;
    sum_avg += slot.gt_delta.avg_delta;
    if (with_per_class_delta) {
      for (int c = 0; c < n_classes; ++c) {
        class_sum_max[static_cast<std::size_t>(c)] +=
            slot.class_deltas[static_cast<std::size_t>(c)].max_delta;
        class_sum_avg[static_cast<std::size_t>(c)] +=
            slot.class_deltas[static_cast<std::size_t>(c)].avg_delta;
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
      report.per_class_delta[static_cast<std::size_t>(c)].max_delta =
          class_sum_max[static_cast<std::size_t>(c)] / static_cast<double>(n);
      report.per_class_delta[static_cast<std::size_t>(c)].avg_delta =
          class_sum_avg[static_cast<std::size_t>(c)] / static_cast<double>(n);
    }
  }
  return report;
}

}  // namespace pedeval

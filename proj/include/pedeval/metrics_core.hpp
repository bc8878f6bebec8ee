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

#ifndef PEDEVAL_METRICS_CORE_HPP_
#define PEDEVAL_METRICS_CORE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pedeval/predlog.hpp"

namespace pedeval {

// Index of the largest confidence; ties break to the lowest class index.
int argmax_class(const std::vector<double>& confidences);

// Weighted confusion counts, rows = ground truth, cols = predicted.
struct ConfusionAccumulator {
  int n_classes = 0;
  std::vector<double> counts;  // row-major, n_classes * n_classes
  double total_weight = 0.0;

  explicit ConfusionAccumulator(int n_classes_);

  double& at(int gt, int pred);
  double at(int gt, int pred) const;
  void add(int gt, int pred, double weight);
  // Entrywise sum; callers merge partials in a fixed order so parallel
  // accumulation stays deterministic.
  void merge(const ConfusionAccumulator& other);

  double row_sum(int gt) const;
  double col_sum(int pred) const;
  double trace() const;
};

// counts[gt][argmax(conf)] += weight over all rows. Accumulation is blocked:
// fixed-size chunks reduce serially and partials merge in chunk order, so the
// result does not depend on the thread count.
ConfusionAccumulator accumulate(const std::vector<EvalRow>& rows,
                                int n_classes, int threads = 0);

// 0/0 cases return 0; pass `degenerate` to record which metric hit one.
double accuracy(const ConfusionAccumulator& cm);
double balanced_accuracy(const ConfusionAccumulator& cm,
                         std::vector<std::string>* degenerate = nullptr);
double precision(const ConfusionAccumulator& cm, int cls);
double recall(const ConfusionAccumulator& cm, int cls);
double f1(const ConfusionAccumulator& cm, int cls);

struct BinaryMetrics {
  double acc = 0.0;
  double bacc = 0.0;
  double prec = 0.0;
  double f1 = 0.0;
};

// Positive class is class 1 (crossing). Throws ArityMismatch unless the
// matrix is 2x2.
BinaryMetrics binary_metrics_positive(const ConfusionAccumulator& cm);

// Reduction of precision/recall/F1 to one number: class-1 values for binary
// matrices, otherwise unweighted means over classes with ground-truth mass.
struct PrecisionRecallF1 {
  double prec = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};
PrecisionRecallF1 reduced_prf(const ConfusionAccumulator& cm,
                              std::vector<std::string>* degenerate = nullptr);

struct ScoredItem {
  double score = 0.0;
  bool is_positive = false;
  double weight = 1.0;
};
using RankedScores = std::vector<ScoredItem>;

// One-vs-rest view of class cls: score = confidences[cls], positive when
// the ground truth is cls.
RankedScores one_vs_rest_scores(const std::vector<EvalRow>& rows, int cls);

// All-points average precision, AP = sum_k (R_k - R_{k-1}) P_k over the list
// sorted by descending score (ties keep input order via stable sort).
// nullopt when the class has no positive weight.
std::optional<double> average_precision(RankedScores scores);

// ROC AUC as the weighted Mann-Whitney statistic with half credit for score
// ties. nullopt when either side has no weight.
std::optional<double> auc_half_credit(RankedScores scores);

struct PerClassRanked {
  std::optional<double> ap;
  std::optional<double> auc;
};

// AP and AUC per class, one-vs-rest. Classes are independent slots, so the
// loop parallelizes without affecting results.
std::vector<PerClassRanked> per_class_ranked(const std::vector<EvalRow>& rows,
                                             int n_classes, int threads = 0);

// Unweighted mean of per-class AP over classes with at least one positive.
std::optional<double> mean_average_precision(
    const std::vector<PerClassRanked>& per_class);

// Binary reports class-1 AUC; multi-class reports the unweighted macro mean
// over classes with both positives and negatives.
std::optional<double> reduced_auc(const std::vector<PerClassRanked>& per_class,
                                  int n_classes);

// Alternative multi-class reduction: per-class AUC averaged with
// ground-truth-mass weights. Reports default to the macro mean; this one is
// exposed for comparison.
std::optional<double> weighted_ovr_auc(
    const std::vector<PerClassRanked>& per_class,
    const ConfusionAccumulator& cm);

struct ScalarMetrics {
  double acc = 0.0;
  double bacc = 0.0;
  double prec = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double map = 0.0;
  double auc = 0.0;
  std::vector<std::string> degenerate;
};

ScalarMetrics scalar_metrics(const ConfusionAccumulator& cm,
                             const std::vector<PerClassRanked>& ranked);

struct PerClassMetrics {
  double prec = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> ap;
  std::optional<double> auc;
  double gt_weight = 0.0;
};

struct ClassificationSummary {
  ConfusionAccumulator confusion{0};
  std::vector<PerClassMetrics> per_class;
  ScalarMetrics scalars;
};

// Full base-metric computation for one set of rows.
ClassificationSummary summarize(const std::vector<EvalRow>& rows,
                                int n_classes, int threads = 0);

}  // namespace pedeval

#endif  // PEDEVAL_METRICS_CORE_HPP_

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

#include "pedeval/metrics_core.hpp"

#include <algorithm>
#include <cmath>

#include "pedeval/errors.hpp"
#include "pedeval/parallel.hpp"

namespace pedeval {

namespace {

constexpr std::int64_t kAccumulateBlock = 1024;

double safe_ratio(double num, double den, const char* what, int cls,
                  std::vector<std::string>* degenerate) {
  if (den > 0.0) {
    return num / den;
  }
  if (degenerate) {
    std::string tag(what);
    if (cls >= 0) {
      tag += "/class_" + std::to_string(cls);
    }
    degenerate->push_back(std::move(tag));
  }
  return 0.0;
}

}  // namespace

int argmax_class(const std::vector<double>& confidences) {
  if (confidences.empty()) {
    throw EmptyInput("argmax of empty confidence vector");
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(confidences.size()); ++i) {
    if (confidences[static_cast<std::size_t>(i)] >
        confidences[static_cast<std::size_t>(best)]) {
      best = i;
    }
  }
  return best;
}

ConfusionAccumulator::ConfusionAccumulator(int n_classes_)
    : n_classes(n_classes_),
      counts(static_cast<std::size_t>(n_classes_) * n_classes_, 0.0) {}

double& ConfusionAccumulator::at(int gt, int pred) {
  return counts[static_cast<std::size_t>(gt) * n_classes + pred];
}

double ConfusionAccumulator::at(int gt, int pred) const {
  return counts[static_cast<std::size_t>(gt) * n_classes + pred];
}

void ConfusionAccumulator::add(int gt, int pred, double weight) {
  if (gt < 0 || gt >= n_classes || pred < 0 || pred >= n_classes) {
    throw ValidationError("confusion index (" + std::to_string(gt) + ", " +
                          std::to_string(pred) + ") outside " +
                          std::to_string(n_classes) + " classes");
  }
  if (weight < 0.0) {
    throw ValidationError("negative sample weight");
  }
  at(gt, pred) += weight;
  total_weight += weight;
}

void ConfusionAccumulator::merge(const ConfusionAccumulator& other) {
  if (other.n_classes != n_classes) {
    throw ArityMismatch("cannot merge confusion matrices of different arity");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    counts[i] += other.counts[i];
  }
  total_weight += other.total_weight;
}

double ConfusionAccumulator::row_sum(int gt) const {
  double s = 0.0;
  for (int p = 0; p < n_classes; ++p) {
    s += at(gt, p);
  }
  return s;
}

double ConfusionAccumulator::col_sum(int pred) const {
  double s = 0.0;
  for (int g = 0; g < n_classes; ++g) {
    s += at(g, pred);
  }
  return s;
}

double ConfusionAccumulator::trace() const {
  double s = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    s += at(c, c);
  }
  return s;
}

ConfusionAccumulator accumulate(const std::vector<EvalRow>& rows,
                                int n_classes, int threads) {
  if (rows.empty()) {
    throw EmptyInput("accumulate: no rows");
  }
  const auto n = static_cast<std::int64_t>(rows.size());
  const std::int64_t n_blocks =
      (n + kAccumulateBlock - 1) / kAccumulateBlock;
  std::vector<ConfusionAccumulator> partial(
      static_cast<std::size_t>(n_blocks), ConfusionAccumulator(n_classes));
  parallel_for(n_blocks, threads, [&](std::int64_t b) {
    ConfusionAccumulator& acc = partial[static_cast<std::size_t>(b)];
    const std::int64_t end = std::min(n, (b + 1) * kAccumulateBlock);
    for (std::int64_t i = b * kAccumulateBlock; i < end; ++i) {
      const EvalRow& row = rows[static_cast<std::size_t>(i)];
      acc.add(row.sample.label, argmax_class(row.pred.confidences),
              row.weight);
    }
  });
  ConfusionAccumulator out(n_classes);
  for (const ConfusionAccumulator& p : partial) {
    out.merge(p);
  }
  return out;
}

double accuracy(const ConfusionAccumulator& cm) {
  return safe_ratio(cm.trace(), cm.total_weight, "accuracy", -1, nullptr);
}

double balanced_accuracy(const ConfusionAccumulator& cm,
                         std::vector<std::string>* degenerate) {
  double sum = 0.0;
  int n_valid = 0;
  for (int c = 0; c < cm.n_classes; ++c) {
    const double rs = cm.row_sum(c);
    if (rs > 0.0) {
      sum += cm.at(c, c) / rs;
      ++n_valid;
    } else if (degenerate) {
      degenerate->push_back("bacc_skipped/class_" + std::to_string(c));
    }
  }
  return safe_ratio(sum, static_cast<double>(n_valid), "bacc", -1, degenerate);
}

double precision(const ConfusionAccumulator& cm, int cls) {
  return safe_ratio(cm.at(cls, cls), cm.col_sum(cls), "precision", cls,
                    nullptr);
}

double recall(const ConfusionAccumulator& cm, int cls) {
  return safe_ratio(cm.at(cls, cls), cm.row_sum(cls), "recall", cls, nullptr);
}

double f1(const ConfusionAccumulator& cm, int cls) {
  const double p = precision(cm, cls);
  const double r = recall(cm, cls);
  return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

BinaryMetrics binary_metrics_positive(const ConfusionAccumulator& cm) {
  if (cm.n_classes != 2) {
    throw ArityMismatch("binary metrics require exactly 2 classes, got " +
                        std::to_string(cm.n_classes));
  }
  BinaryMetrics m;
  m.acc = accuracy(cm);
  m.bacc = balanced_accuracy(cm);
  m.prec = precision(cm, 1);
  m.f1 = f1(cm, 1);
  return m;
}

PrecisionRecallF1 reduced_prf(const ConfusionAccumulator& cm,
                              std::vector<std::string>* degenerate) {
  PrecisionRecallF1 out;
  if (cm.n_classes == 2) {
    if (cm.col_sum(1) <= 0.0 && degenerate) {
      degenerate->push_back("precision/class_1");
    }
    if (cm.row_sum(1) <= 0.0 && degenerate) {
      degenerate->push_back("recall/class_1");
    }
    out.prec = precision(cm, 1);
    out.recall = recall(cm, 1);
    out.f1 = f1(cm, 1);
    return out;
  }
  double sp = 0.0;
  double sr = 0.0;
  double sf = 0.0;
  int n_valid = 0;
  for (int c = 0; c < cm.n_classes; ++c) {
    if (cm.row_sum(c) <= 0.0) {
      continue;
    }
    if (cm.col_sum(c) <= 0.0 && degenerate) {
      degenerate->push_back("precision/class_" + std::to_string(c));
    }
    sp += precision(cm, c);
    sr += recall(cm, c);
    sf += f1(cm, c);
    ++n_valid;
  }
  out.prec = safe_ratio(sp, n_valid, "precision_macro", -1, degenerate);
  out.recall = safe_ratio(sr, n_valid, "recall_macro", -1, degenerate);
  out.f1 = safe_ratio(sf, n_valid, "f1_macro", -1, degenerate);
  return out;
}

RankedScores one_vs_rest_scores(const std::vector<EvalRow>& rows, int cls) {
  RankedScores out;
  out.reserve(rows.size());
  for (const EvalRow& row : rows) {
    out.push_back(ScoredItem{
        row.pred.confidences[static_cast<std::size_t>(cls)],
        row.sample.label == cls, row.weight});
  }
  return out;
}

std::optional<double> average_precision(RankedScores scores) {
  double w_pos = 0.0;
  for (const ScoredItem& s : scores) {
    if (!std::isfinite(s.score)) {
      throw ValidationError("non-finite score in ranked metric");
    }
    if (s.is_positive) {
      w_pos += s.weight;
    }
  }
  if (!(w_pos > 0.0)) {
    return std::nullopt;
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const ScoredItem& a, const ScoredItem& b) {
                     return a.score > b.score;
                   });
  double tp = 0.0;
  double fp = 0.0;
  double ap = 0.0;
  double prev_recall = 0.0;
  for (const ScoredItem& s : scores) {
    if (s.is_positive) {
      tp += s.weight;
      const double r = tp / w_pos;
      const double denom = tp + fp;
      if (denom > 0.0) {
        ap += (r - prev_recall) * (tp / denom);
      }
      prev_recall = r;
    } else {
      fp += s.weight;
    }
  }
  return ap;
}

std::optional<double> auc_half_credit(RankedScores scores) {
  double w_pos = 0.0;
  double w_neg = 0.0;
  for (const ScoredItem& s : scores) {
    if (!std::isfinite(s.score)) {
      throw ValidationError("non-finite score in ranked metric");
    }
    (s.is_positive ? w_pos : w_neg) += s.weight;
  }
  if (!(w_pos > 0.0) || !(w_neg > 0.0)) {
    return std::nullopt;
  }
  std::stable_sort(scores.begin(), scores.end(),
                   [](const ScoredItem& a, const ScoredItem& b) {
                     return a.score < b.score;
                   });
  // Mann-Whitney numerator walked over tie groups: each positive earns the
  // negative weight strictly below it plus half the tied negative weight.
  double numerator = 0.0;
  double neg_below = 0.0;
  std::size_t i = 0;
  while (i < scores.size()) {
    std::size_t j = i;
    double group_pos = 0.0;
    double group_neg = 0.0;
    while (j < scores.size() && scores[j].score == scores[i].score) {
      (scores[j].is_positive ? group_pos : group_neg) += scores[j].weight;
      ++j;
    }
    numerator += group_pos * (neg_below + 0.5 * group_neg);
    neg_below += group_neg;
    i = j;
  }
  return numerator / (w_pos * w_neg);
}

std::vector<PerClassRanked> per_class_ranked(const std::vector<EvalRow>& rows,
                                             int n_classes, int threads) {
  if (rows.empty()) {
    throw EmptyInput("per_class_ranked: no rows");
  }
  std::vector<PerClassRanked> out(static_cast<std::size_t>(n_classes));
  parallel_for(n_classes, threads, [&](std::int64_t c) {
    const int cls = static_cast<int>(c);
    RankedScores scores = one_vs_rest_scores(rows, cls);
    out[static_cast<std::size_t>(c)].ap = average_precision(scores);
    out[static_cast<std::size_t>(c)].auc = auc_half_credit(std::move(scores));
  });
  return out;
}

std::optional<double> mean_average_precision(
    const std::vector<PerClassRanked>& per_class) {
  double sum = 0.0;
  int n = 0;
  for (const PerClassRanked& pc : per_class) {
    if (pc.ap) {
      sum += *pc.ap;
      ++n;
    }
  }
  if (n == 0) {
    return std::nullopt;
  }
  return sum / static_cast<double>(n);
}

std::optional<double> reduced_auc(const std::vector<PerClassRanked>& per_class,
                                  int n_classes) {
  if (n_classes == 2) {
    return per_class[1].auc;
  }
  double sum = 0.0;
  int n = 0;
  for (const PerClassRanked& pc : per_class) {
    if (pc.auc) {
      sum += *pc.auc;
      ++n;
    }
  }
  if (n == 0) {
    return std::nullopt;
  }
  return sum / static_cast<double>(n);
}

std::optional<double> weighted_ovr_auc(
    const std::vector<PerClassRanked>& per_class,
    const ConfusionAccumulator& cm) {
  if (static_cast<int>(per_class.size()) != cm.n_classes) {
    throw ArityMismatch("weighted_ovr_auc: per-class size vs matrix");
  }
  double sum = 0.0;
  double mass = 0.0;
  for (int c = 0; c < cm.n_classes; ++c) {
    if (per_class[c].auc) {
      sum += *per_class[c].auc * cm.row_sum(c);
      mass += cm.row_sum(c);
    }
  }
  if (mass <= 0.0) {
    return std::nullopt;
  }
  return sum / mass;
}

ScalarMetrics scalar_metrics(const ConfusionAccumulator& cm,
                             const std::vector<PerClassRanked>& ranked) {
  ScalarMetrics m;
  m.acc = accuracy(cm);
  if (cm.total_weight <= 0.0) {
    m.degenerate.push_back("accuracy/zero_total_weight");
  }
  m.bacc = balanced_accuracy(cm, &m.degenerate);
  const PrecisionRecallF1 prf = reduced_prf(cm, &m.degenerate);
  m.prec = prf.prec;
  m.recall = prf.recall;
  m.f1 = prf.f1;
  for (int c = 0; c < static_cast<int>(ranked.size()); ++c) {
    const PerClassRanked& pc = ranked[static_cast<std::size_t>(c)];
    if (!pc.ap) {
      m.degenerate.push_back("ap_skipped/class_" + std::to_string(c));
    }
    if (!pc.auc) {
      m.degenerate.push_back("auc_skipped/class_" + std::to_string(c));
    }
  }
  if (const auto v = mean_average_precision(ranked)) {
    m.map = *v;
  } else {
    m.degenerate.push_back("map/no_valid_classes");
  }
  if (const auto v = reduced_auc(ranked, cm.n_classes)) {
    m.auc = *v;
  } else {
    m.degenerate.push_back("auc/no_valid_classes");
  }
  return m;
}

ClassificationSummary summarize(const std::vector<EvalRow>& rows,
                                int n_classes, int threads) {
  ClassificationSummary s{ConfusionAccumulator(n_classes), {}, {}};
  s.confusion = accumulate(rows, n_classes, threads);
  const std::vector<PerClassRanked> ranked =
      per_class_ranked(rows, n_classes, threads);
  s.per_class.resize(static_cast<std::size_t>(n_classes));
  for (int c = 0; c < n_classes; ++c) {
    PerClassMetrics& pc = s.per_class[static_cast<std::size_t>(c)];
    pc.prec = precision(s.confusion, c);
    pc.recall = recall(s.confusion, c);
    pc.f1 = f1(s.confusion, c);
    pc.ap = ranked[static_cast<std::size_t>(c)].ap;
    pc.auc = ranked[static_cast<std::size_t>(c)].auc;
    pc.gt_weight = s.confusion.row_sum(c);
  }
  s.scalars = scalar_metrics(s.confusion, ranked);
  return s;
}

}  // namespace pedeval

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

#include "pedeval/metrics_weighted.hpp"

#include <cmath>

#include "pedeval/errors.hpp"

namespace pedeval {

void validate(const TteWeightConfig& cfg) {
  if (!(cfg.sigma_a > 0.0)) {
    throw ValidationError("sigma_a must be positive");
  }
  if (cfg.tte_max_ref <= 0) {
    throw ValidationError("tte_max_ref must be positive");
  }
}

double tte_weight_raw(std::int64_t tte, const TteWeightConfig& cfg) {
  validate(cfg);
  if (tte < 0 || tte > cfg.tte_max_ref) {
    throw OutOfRangeTte("tte " + std::to_string(tte) + " outside [0, " +
                        std::to_string(cfg.tte_max_ref) + "]");
  }
  const double d = static_cast<double>(cfg.tte_max_ref - tte) /
                   static_cast<double>(cfg.tte_max_ref);
  const double z = d / cfg.sigma_a;
  return std::exp(-0.5 * z * z);
}

std::vector<double> normalize_weights(const std::vector<double>& raw) {
  if (raw.empty()) {
    throw EmptyInput("normalize_weights: empty input");
  }
  double sum = 0.0;
  for (const double w : raw) {
    if (!(w > 0.0)) {
      throw ValidationError("normalize_weights requires positive weights");
    }
    sum += w;
  }
  std::vector<double> out;
  out.reserve(raw.size());
  for (const double w : raw) {
    out.push_back(w / sum);
  }
  return out;
}

std::string to_string(WeightScheme s) {
  switch (s) {
    case WeightScheme::uniform: return "uniform";
    case WeightScheme::tte: return "tte";
    case WeightScheme::risk_region: return "risk_region";
  }
  return "uniform";
}

WeightScheme weight_scheme_from_string(const std::string& s) {
  if (s == "uniform") return WeightScheme::uniform;
  if (s == "tte") return WeightScheme::tte;
  if (s == "risk_region" || s == "risk") return WeightScheme::risk_region;
  throw ValidationError("unknown weight scheme: '" + s + "'");
}

void fill_weights(std::vector<EvalRow>& rows, WeightScheme scheme,
                  const TteWeightConfig& tte_cfg, const RiskGridConfig& grid) {
  switch (scheme) {
    case WeightScheme::uniform:
      for (EvalRow& row : rows) {
        row.weight = 1.0;
      }
      return;
    case WeightScheme::tte: {
      std::vector<double> raw;
      raw.reserve(rows.size());
      for (const EvalRow& row : rows) {
        if (row.sample.task != Task::action) {
          throw SchemeTaskMismatch(
              "tte weighting applies to the action task only");
        }
        if (!row.sample.tte) {
          throw SchemeTaskMismatch("sample '" + row.sample.sample_id +
                                   "' carries no tte");
        }
        raw.push_back(tte_weight_raw(*row.sample.tte, tte_cfg));
      }
      const std::vector<double> norm = normalize_weights(raw);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].weight = norm[i];
      }
      return;
    }
    case WeightScheme::risk_region:
      for (EvalRow& row : rows) {
        if (row.sample.task != Task::risk) {
          throw SchemeTaskMismatch(
              "risk_region weighting applies to the risk task only");
        }
        row.weight = risk_weight(row.sample.label + 1, grid);
      }
      return;
  }
}

WeightedReport weighted_report(std::vector<EvalRow> rows, WeightScheme scheme,
                               const TteWeightConfig& tte_cfg,
                               const RiskGridConfig& grid, int n_classes,
                               int threads) {
  if (rows.empty()) {
    throw EmptyInput("weighted_report: no rows");
  }
  WeightedReport out;
  out.scheme = scheme;

  fill_weights(rows, WeightScheme::uniform, tte_cfg, grid);
  out.base = summarize(rows, n_classes, threads).scalars;

  fill_weights(rows, scheme, tte_cfg, grid);
  out.weighted = summarize(rows, n_classes, threads).scalars;

  out.weights.reserve(rows.size());
  for (const EvalRow& row : rows) {
    out.weights.push_back(row.weight);
  }
  return out;
}

}  // namespace pedeval

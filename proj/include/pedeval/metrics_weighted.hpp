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

#ifndef PEDEVAL_METRICS_WEIGHTED_HPP_
#define PEDEVAL_METRICS_WEIGHTED_HPP_

#include <string>
#include <vector>

#include "pedeval/metrics_core.hpp"
#include "pedeval/risk_grid.hpp"

namespace pedeval {

struct TteWeightConfig {
  double sigma_a = 0.3;
  int tte_max_ref = 90;  // the max(TTE) reference, frames

  bool operator==(const TteWeightConfig&) const = default;
};

void validate(const TteWeightConfig& cfg);

// Unnormalized TTE weight exp(-0.5 * (d / sigma)^2) with
// d = (tte_max_ref - tte) / tte_max_ref. Samples far from the event weigh
// more. Throws OutOfRangeTte unless 0 <= tte <= tte_max_ref.
double tte_weight_raw(std::int64_t tte, const TteWeightConfig& cfg);

// Divides by the sum; output sums to 1 within 1e-12. All inputs must be
// positive.
std::vector<double> normalize_weights(const std::vector<double>& raw);

enum class WeightScheme { uniform, tte, risk_region };

std::string to_string(WeightScheme s);
WeightScheme weight_scheme_from_string(const std::string& s);

// Fills row weights in place: uniform writes exactly 1.0 (so downstream
// metrics are bit-identical to the unweighted path), tte writes normalized
// TTE weights, risk_region writes the ground-truth region's unnormalized
// weight. Throws SchemeTaskMismatch when the scheme does not fit the rows'
// task.
void fill_weights(std::vector<EvalRow>& rows, WeightScheme scheme,
                  const TteWeightConfig& tte_cfg, const RiskGridConfig& grid);

struct WeightedReport {
  WeightScheme scheme = WeightScheme::uniform;
  ScalarMetrics base;
  ScalarMetrics weighted;
  std::vector<double> weights;  // per row, in row order
};

// Base and weighted scalar metrics side by side over the same rows.
WeightedReport weighted_report(std::vector<EvalRow> rows, WeightScheme scheme,
                               const TteWeightConfig& tte_cfg,
                               const RiskGridConfig& grid, int n_classes,
                               int threads = 0);

}  // namespace pedeval

#endif  // PEDEVAL_METRICS_WEIGHTED_HPP_

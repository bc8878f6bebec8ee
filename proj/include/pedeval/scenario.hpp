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

#ifndef PEDEVAL_SCENARIO_HPP_
#define PEDEVAL_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pedeval/metrics_core.hpp"

namespace pedeval {

enum class ScenarioFactor { scale, state, speed, signal, road };

std::string to_string(ScenarioFactor f);
ScenarioFactor scenario_factor_from_string(const std::string& s);

struct ScenarioBinning {
  std::vector<double> scale_bins{60.0, 120.0};
  // First cut must be 0 and forms a dedicated "=0" stationary bin.
  std::vector<double> speed_bins{0.0, 10.0, 20.0, 30.0};
  std::vector<ScenarioFactor> factors{
      ScenarioFactor::scale, ScenarioFactor::state, ScenarioFactor::speed,
      ScenarioFactor::signal, ScenarioFactor::road};
  std::int64_t min_samples = 10;

  bool operator==(const ScenarioBinning&) const = default;
};

void validate(const ScenarioBinning& binning);

// Ordered labels of one factor's bins, e.g. speed -> "=0", "(0,10]", ...,
// "(30,inf)".
std::vector<std::string> factor_bin_labels(ScenarioFactor f,
                                           const ScenarioBinning& binning);

// Bin index of a row under one factor (always a valid index: bins cover the
// whole range).
int factor_bin_index(const ScenarioContext& ctx, ScenarioFactor f,
                     const ScenarioBinning& binning);

struct ScenarioBin {
  std::string factor;  // "scale", or "scale*speed" for pair slices
  std::string bin;     // "(0,60]", or "(0,60]|(10,20]" for pairs
  std::int64_t count = 0;
  bool low_confidence = false;  // count < min_samples (empty bins included)
  ScalarMetrics metrics;        // zeros with "empty_bin" flag when count == 0
};

// Per-factor partition of rows with full scalar metrics per bin. Bins appear
// for every label, including empty ones.
std::vector<ScenarioBin> slice(const std::vector<EvalRow>& rows,
                               int n_classes, const ScenarioBinning& binning,
                               int threads = 0);

// Cross-factor pairs (every unordered pair of enabled factors); exposed
// behind the CLI's --experimental flag.
std::vector<ScenarioBin> slice_pairs(const std::vector<EvalRow>& rows,
                                     int n_classes,
                                     const ScenarioBinning& binning,
                                     int threads = 0);

enum class AgreementOutcome {
  both_correct,
  intention_only,
  action_only,
  both_incorrect
};

std::string to_string(AgreementOutcome o);

struct AgreementCell {
  int intention_class = 0;
  int action_class = 0;
  AgreementOutcome outcome = AgreementOutcome::both_correct;
  std::int64_t count = 0;
  double fraction = 0.0;
};

struct AgreementReport {
  std::string model;
  std::int64_t matched = 0;
  std::int64_t intention_unmatched = 0;
  std::int64_t action_unmatched = 0;
  std::vector<AgreementCell> cells;  // full 3 x 2 x 4 grid, fixed order
  std::array<std::int64_t, 4> outcome_counts{};   // indexed by outcome
  std::array<double, 4> outcome_fractions{};
};

// Joint correctness of one model on intention and action rows describing
// the same windows; rows are matched on (ped_id, obs_start) because
// sample_id embeds the task name. Throws JoinMismatch when nothing matches.
AgreementReport agreement(const std::vector<EvalRow>& intention_rows,
                          const std::vector<EvalRow>& action_rows);

}  // namespace pedeval

#endif  // PEDEVAL_SCENARIO_HPP_

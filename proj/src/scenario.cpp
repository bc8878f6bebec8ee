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

#include "pedeval/scenario.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "pedeval/errors.hpp"

namespace pedeval {

namespace {

std::string range_label(double lo, double hi, bool has_hi) {
  const auto fmt = [](double v) {
    std::string s = std::to_string(v);
    // Trim trailing zeros for readable cut points (60.000000 -> 60).
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.') {
      s.pop_back();
    }
    return s;
  };
  if (!has_hi) {
    return "(" + fmt(lo) + ",inf)";
  }
  return "(" + fmt(lo) + "," + fmt(hi) + "]";
}

// Index into (c0, c1], (c1, c2], ..., (ck, inf); values <= c0 land in the
// first interval.
int cut_index(double v, const std::vector<double>& cuts) {
  int idx = 0;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (v > cuts[i - 1]) {
      idx = static_cast<int>(i);
    }
  }
  if (v > cuts.back()) {
    idx = static_cast<int>(cuts.size());
  }
  return idx;
}

ScalarMetrics bin_metrics(const std::vector<EvalRow>& rows, int n_classes,
                          int threads) {
  if (rows.empty()) {
    ScalarMetrics empty;
    empty.degenerate.push_back("empty_bin");
    return empty;
  }
  return summarize(rows, n_classes, threads).scalars;
}

std::vector<ScenarioBin> slice_one(
    const std::vector<EvalRow>& rows, int n_classes,
    const ScenarioBinning& binning, int threads, const std::string& factor,
    const std::vector<std::string>& labels,
    const std::function<int(const ScenarioContext&)>& bin_of) {
  std::vector<std::vector<EvalRow>> partition(labels.size());
  for (const EvalRow& row : rows) {
    partition[static_cast<std::size_t>(bin_of(row.sample.context))]
        .push_back(row);
  }
  std::vector<ScenarioBin> out;
  out.reserve(labels.size());
  for (std::size_t b = 0; b < labels.size(); ++b) {
    ScenarioBin bin;
    bin.factor = factor;
    bin.bin = labels[b];
    bin.count = static_cast<std::int64_t>(partition[b].size());
    bin.low_confidence = bin.count < binning.min_samples;
    bin.metrics = bin_metrics(partition[b], n_classes, threads);
    out.push_back(std::move(bin));
  }
  return out;
}

}  // namespace

std::string to_string(ScenarioFactor f) {
  switch (f) {
    case ScenarioFactor::scale: return "scale";
    case ScenarioFactor::state: return "state";
    case ScenarioFactor::speed: return "speed";
    case ScenarioFactor::signal: return "signal";
    case ScenarioFactor::road: return "road";
  }
  return "scale";
}

ScenarioFactor scenario_factor_from_string(const std::string& s) {
  if (s == "scale") return ScenarioFactor::scale;
  if (s == "state") return ScenarioFactor::state;
  if (s == "speed") return ScenarioFactor::speed;
  if (s == "signal") return ScenarioFactor::signal;
  if (s == "road") return ScenarioFactor::road;
  throw ValidationError("unknown scenario factor: '" + s + "'");
}

void validate(const ScenarioBinning& binning) {
  const auto ascending = [](const std::vector<double>& cuts) {
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (!(cuts[i] > cuts[i - 1])) {
        return false;
      }
    }
    return !cuts.empty();
  };
  if (!ascending(binning.scale_bins)) {
    throw ValidationError("scale_bins must be non-empty strictly ascending");
  }
  if (!ascending(binning.speed_bins) || binning.speed_bins.front() != 0.0) {
    throw ValidationError(
        "speed_bins must be strictly ascending and start at 0 (the "
        "stationary bin)");
  }
  if (binning.factors.empty()) {
    throw ValidationError("at least one scenario factor must be enabled");
  }
  if (binning.min_samples < 0) {
    throw ValidationError("min_samples must be non-negative");
  }
}

std::vector<std::string> factor_bin_labels(ScenarioFactor f,
                                           const ScenarioBinning& binning) {
  switch (f) {
    case ScenarioFactor::scale: {
      std::vector<std::string> labels;
      labels.push_back(range_label(0.0, binning.scale_bins.front(), true));
      for (std::size_t i = 1; i < binning.scale_bins.size(); ++i) {
        labels.push_back(range_label(binning.scale_bins[i - 1],
                                     binning.scale_bins[i], true));
      }
      labels.push_back(range_label(binning.scale_bins.back(), 0.0, false));
      return labels;
    }
    case ScenarioFactor::speed: {
      std::vector<std::string> labels;
      labels.push_back("=0");
      for (std::size_t i = 1; i < binning.speed_bins.size(); ++i) {
        labels.push_back(range_label(binning.speed_bins[i - 1],
                                     binning.speed_bins[i], true));
      }
      labels.push_back(range_label(binning.speed_bins.back(), 0.0, false));
      return labels;
    }
    case ScenarioFactor::state:
      return {"walking", "standing"};
    case ScenarioFactor::signal:
      return {"forbid", "allow", "none"};
    case ScenarioFactor::road:
      return {"one_way", "two_way", "unknown"};
  }
  return {};
}

int factor_bin_index(const ScenarioContext& ctx, ScenarioFactor f,
                     const ScenarioBinning& binning) {
  switch (f) {
    case ScenarioFactor::scale:
      return cut_index(ctx.mean_scale, binning.scale_bins);
    case ScenarioFactor::speed:
      // speed_bins[0] == 0 is the dedicated stationary bin.
      return ctx.mean_speed <= 0.0 ? 0
                                   : cut_index(ctx.mean_speed,
                                               binning.speed_bins);
    case ScenarioFactor::state:
      return ctx.state == PedState::walking ? 0 : 1;
    case ScenarioFactor::signal:
      return static_cast<int>(ctx.signal);
    case ScenarioFactor::road:
      return static_cast<int>(ctx.road_type);
  }
  return 0;
}

std::vector<ScenarioBin> slice(const std::vector<EvalRow>& rows,
                               int n_classes, const ScenarioBinning& binning,
                               int threads) {
  validate(binning);
  std::vector<ScenarioBin> out;
  for (const ScenarioFactor f : binning.factors) {
    const std::vector<std::string> labels = factor_bin_labels(f, binning);
    std::vector<ScenarioBin> bins = slice_one(
        rows, n_classes, binning, threads, to_string(f), labels,
        [&](const ScenarioContext& ctx) {
          return factor_bin_index(ctx, f, binning);
        });
    out.insert(out.end(), std::make_move_iterator(bins.begin()),
               std::make_move_iterator(bins.end()));
  }
  return out;
}

std::vector<ScenarioBin> slice_pairs(const std::vector<EvalRow>& rows,
                                     int n_classes,
                                     const ScenarioBinning& binning,
                                     int threads) {
  validate(binning);
  std::vector<ScenarioBin> out;
  for (std::size_t a = 0; a < binning.factors.size(); ++a) {
    for (std::size_t b = a + 1; b < binning.factors.size(); ++b) {
      const ScenarioFactor fa = binning.factors[a];
      const ScenarioFactor fb = binning.factors[b];
      const auto la = factor_bin_labels(fa, binning);
      const auto lb = factor_bin_labels(fb, binning);
      std::vector<std::string> labels;
      labels.reserve(la.size() * lb.size());
      for (const std::string& x : la) {
        for (const std::string& y : lb) {
          labels.push_back(x + "|" + y);
        }
      }
      std::vector<ScenarioBin> bins = slice_one(
          rows, n_classes, binning, threads,
          to_string(fa) + "*" + to_string(fb), labels,
          [&](const ScenarioContext& ctx) {
            return factor_bin_index(ctx, fa, binning) *
                       static_cast<int>(lb.size()) +
                   factor_bin_index(ctx, fb, binning);
          });
      out.insert(out.end(), std::make_move_iterator(bins.begin()),
                 std::make_move_iterator(bins.end()));
    }
  }
  return out;
}

std::string to_string(AgreementOutcome o) {
  switch (o) {
    case AgreementOutcome::both_correct: return "both_correct";
    case AgreementOutcome::intention_only: return "intention_only";
    case AgreementOutcome::action_only: return "action_only";
    case AgreementOutcome::both_incorrect: return "both_incorrect";
  }
  return "both_correct";
}

AgreementReport agreement(const std::vector<EvalRow>& intention_rows,
                          const std::vector<EvalRow>& action_rows) {
  std::string model;
  const auto check_model = [&model](const EvalRow& row) {
    if (model.empty()) {
      model = row.pred.model;
    } else if (row.pred.model != model) {
      throw ValidationError(
          "agreement requires rows from a single model, got '" + model +
          "' and '" + row.pred.model + "'");
    }
  };

  std::unordered_map<std::string, const EvalRow*> action_by_window;
  action_by_window.reserve(action_rows.size());
  for (const EvalRow& row : action_rows) {
    if (row.sample.task != Task::action) {
      throw ValidationError("agreement: second row set must be action rows");
    }
    check_model(row);
    action_by_window.emplace(
        row.sample.ped_id + "#" + std::to_string(row.sample.obs_start), &row);
  }

  AgreementReport report;
  // Full grid in fixed order so output is stable.
  for (int ic = 0; ic < 3; ++ic) {
    for (int ac = 0; ac < 2; ++ac) {
      for (int o = 0; o < 4; ++o) {
        AgreementCell cell;
        cell.intention_class = ic;
        cell.action_class = ac;
        cell.outcome = static_cast<AgreementOutcome>(o);
        report.cells.push_back(cell);
      }
    }
  }

  std::int64_t matched = 0;
  std::unordered_map<std::string, bool> used;
  for (const EvalRow& irow : intention_rows) {
    if (irow.sample.task != Task::intention) {
      throw ValidationError(
          "agreement: first row set must be intention rows");
    }
    check_model(irow);
    const std::string key =
        irow.sample.ped_id + "#" + std::to_string(irow.sample.obs_start);
    const auto it = action_by_window.find(key);
    if (it == action_by_window.end()) {
      ++report.intention_unmatched;
      continue;
    }
    used[key] = true;
    const EvalRow& arow = *it->second;
    const bool i_ok =
        argmax_class(irow.pred.confidences) == irow.sample.label;
    const bool a_ok =
        argmax_class(arow.pred.confidences) == arow.sample.label;
    AgreementOutcome outcome;
    if (i_ok && a_ok) {
      outcome = AgreementOutcome::both_correct;
    } else if (i_ok) {
      outcome = AgreementOutcome::intention_only;
    } else if (a_ok) {
      outcome = AgreementOutcome::action_only;
    } else {
      outcome = AgreementOutcome::both_incorrect;
    }
    const std::size_t idx =
        (static_cast<std::size_t>(irow.sample.label) * 2 +
         static_cast<std::size_t>(arow.sample.label)) *
            4 +
        static_cast<std::size_t>(outcome);
    report.cells[idx].count += 1;
    report.outcome_counts[static_cast<std::size_t>(outcome)] += 1;
    ++matched;
  }
  report.matched = matched;
  report.action_unmatched =
      static_cast<std::int64_t>(action_rows.size()) -
      static_cast<std::int64_t>(used.size());
  report.model = model;

  if (matched == 0) {
    throw JoinMismatch(
        "agreement: no intention/action samples share a window");
  }
  for (AgreementCell& cell : report.cells) {
    cell.fraction =
        static_cast<double>(cell.count) / static_cast<double>(matched);
  }
  for (std::size_t o = 0; o < 4; ++o) {
    report.outcome_fractions[o] = static_cast<double>(report.outcome_counts[o]) /
                                  static_cast<double>(matched);
  }
  return report;
}

}  // namespace pedeval

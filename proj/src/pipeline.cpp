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

#include "pedeval/pipeline.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include "pedeval/canonical_json.hpp"
#include "pedeval/errors.hpp"

namespace pedeval {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoFailure("cannot open for writing: " + path);
  }
  out << text;
  if (!out) {
    throw IoFailure("write failed: " + path);
  }
}

std::vector<PredictionRecord> filter_task(
    const std::vector<PredictionRecord>& preds, Task task) {
  std::vector<PredictionRecord> out;
  for (const auto& p : preds) {
    if (p.task == task) {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<PredictionRecord> filter_model(
    const std::vector<PredictionRecord>& preds, const std::string& model) {
  std::vector<PredictionRecord> out;
  for (const auto& p : preds) {
    if (p.model == model) {
      out.push_back(p);
    }
  }
  return out;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) {
      out += ", ";
    }
    out += n;
  }
  return out;
}

// Picks the model to evaluate: an explicit request must exist in the log,
// an empty request is only unambiguous when the log holds a single model.
std::string resolve_model(const std::vector<PredictionRecord>& preds,
                          const std::string& requested,
                          const std::string& what) {
  std::vector<std::string> models = models_in(preds);
  if (!requested.empty()) {
    for (const auto& m : models) {
      if (m == requested) {
        return requested;
      }
    }
    throw ValidationError("model \"" + requested + "\" has no " + what +
                          " predictions (log has: " + join_names(models) +
                          ")");
  }
  if (models.empty()) {
    throw EmptyInput("prediction log has no " + what + " records");
  }
  if (models.size() > 1) {
    throw ValidationError("prediction log has several models (" +
                          join_names(models) + "); pass --model");
  }
  return models.front();
}

void warn_grid_remainder(const Dataset& ds, const RiskGridConfig& grid) {
  for (const auto& video : ds.videos) {
    if (!grid_covers_width(video.width, grid)) {
      std::cerr << "warning: video " << video.video_id << " width "
                << video.width << " is not " << grid.n_regions << " x "
                << grid.region_width
                << " px; the last region absorbs the remainder\n";
    }
  }
}

// Real-valued knobs are quantized to the report's 6-decimal float precision
// before use, so the echoed configuration is exactly the configuration that
// ran and re-running from the echo reproduces the report byte for byte.
void quantize(SamplerConfig& cfg) {
  cfg.overlap_frac = round6(cfg.overlap_frac);
  cfg.intention_bins = {round6(cfg.intention_bins[0]),
                        round6(cfg.intention_bins[1])};
}

void quantize(RiskGridConfig& grid) { grid.sigma_r = round6(grid.sigma_r); }

void quantize(EvaluateRequest& request) {
  quantize(request.sampler);
  quantize(request.grid);
  request.sigma_a = round6(request.sigma_a);
  for (double& cut : request.binning.scale_bins) {
    cut = round6(cut);
  }
  for (double& cut : request.binning.speed_bins) {
    cut = round6(cut);
  }
}

void validate_request(const EvaluateRequest& request) {
  validate(request.sampler);
  validate(request.grid);
  validate(effective_tte_config(request));
  validate(request.binning);
  if (request.wrong_label_offset % task_arity(request.task, request.grid) ==
      0) {
    throw ValidationError(
        "wrong_label_offset must not be a multiple of the class count");
  }
}

}  // namespace

TteWeightConfig effective_tte_config(const EvaluateRequest& request) {
  TteWeightConfig cfg;
  cfg.sigma_a = request.sigma_a;
  cfg.tte_max_ref =
      request.tte_max_ref > 0 ? request.tte_max_ref : request.sampler.tte_max;
  return cfg;
}

std::string resolve_scheme(const EvaluateRequest& request) {
  const std::string& s = request.scheme;
  if (s == "auto") {
    switch (request.task) {
      case Task::action:
        return "tte";
      case Task::risk:
        return "risk_region";
      case Task::intention:
        return "none";
    }
    throw ValidationError("unknown task");
  }
  if (s == "none") {
    return s;
  }
  return to_string(weight_scheme_from_string(s));
}

// threads is deliberately not echoed: results are thread-count invariant,
// and echoing it would break report byte-identity across --threads runs.
nlohmann::json config_echo_json(const EvaluateRequest& request) {
  nlohmann::json factors = nlohmann::json::array();
  for (ScenarioFactor f : request.binning.factors) {
    factors.push_back(to_string(f));
  }
  return nlohmann::json{
      {"dataset", request.dataset_path},
      {"predictions", request.predictions_path},
      {"task", to_string(request.task)},
      {"model", request.model},
      {"scheme", resolve_scheme(request)},
      {"join", to_string(request.join_policy)},
      {"obs_len", request.sampler.obs_len},
      {"overlap_frac", request.sampler.overlap_frac},
      {"tte_min", request.sampler.tte_min},
      {"tte_max", request.sampler.tte_max},
      {"horizon", request.sampler.horizon},
      {"intention_bins",
       {request.sampler.intention_bins[0], request.sampler.intention_bins[1]}},
      {"keep_long_tte", request.sampler.keep_long_tte},
      {"span_full_track", request.sampler.span_full_track},
      {"region_width", request.grid.region_width},
      {"n_regions", request.grid.n_regions},
      {"sigma_r", request.grid.sigma_r},
      {"sigma_a", request.sigma_a},
      {"tte_max_ref", effective_tte_config(request).tte_max_ref},
      {"wrong_label_offset", request.wrong_label_offset},
      {"per_class_delta", request.per_class_delta},
      {"export_weights", request.export_weights},
      {"scenario", request.with_scenario},
      {"experimental_pairs", request.experimental_pairs},
      {"scale_bins", request.binning.scale_bins},
      {"speed_bins", request.binning.speed_bins},
      {"min_bin_samples", request.binning.min_samples},
      {"factors", factors},
      {"on_inconsistent_gt",
       request.skip_inconsistent_gt ? "skip" : "error"},
  };
}

EvaluateRequest request_from_echo(const nlohmann::json& echo) {
  try {
    EvaluateRequest r;
    r.dataset_path = echo.at("dataset").get<std::string>();
    r.predictions_path = echo.at("predictions").get<std::string>();
    r.task = task_from_string(echo.at("task").get<std::string>());
    r.model = echo.at("model").get<std::string>();
    r.scheme = echo.at("scheme").get<std::string>();
    r.join_policy =
        join_policy_from_string(echo.at("join").get<std::string>());
    r.sampler.obs_len = echo.at("obs_len").get<int>();
    r.sampler.overlap_frac = echo.at("overlap_frac").get<double>();
    r.sampler.tte_min = echo.at("tte_min").get<int>();
    r.sampler.tte_max = echo.at("tte_max").get<int>();
    r.sampler.horizon = echo.at("horizon").get<int>();
    const auto& bins = echo.at("intention_bins");
    r.sampler.intention_bins = {bins.at(0).get<double>(),
                                bins.at(1).get<double>()};
    r.sampler.keep_long_tte = echo.at("keep_long_tte").get<bool>();
    r.sampler.span_full_track = echo.at("span_full_track").get<bool>();
    r.grid.region_width = echo.at("region_width").get<int>();
    r.grid.n_regions = echo.at("n_regions").get<int>();
    r.grid.sigma_r = echo.at("sigma_r").get<double>();
    r.sigma_a = echo.at("sigma_a").get<double>();
    r.tte_max_ref = echo.at("tte_max_ref").get<int>();
    r.wrong_label_offset = echo.at("wrong_label_offset").get<int>();
    r.per_class_delta = echo.at("per_class_delta").get<bool>();
    r.export_weights = echo.at("export_weights").get<bool>();
    r.with_scenario = echo.at("scenario").get<bool>();
    r.experimental_pairs = echo.at("experimental_pairs").get<bool>();
    r.binning.scale_bins =
        echo.at("scale_bins").get<std::vector<double>>();
    r.binning.speed_bins =
        echo.at("speed_bins").get<std::vector<double>>();
    r.binning.min_samples = echo.at("min_bin_samples").get<std::int64_t>();
    r.binning.factors.clear();
    for (const auto& f : echo.at("factors")) {
      r.binning.factors.push_back(
          scenario_factor_from_string(f.get<std::string>()));
    }
    r.skip_inconsistent_gt =
        echo.at("on_inconsistent_gt").get<std::string>() == "skip";
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed config echo: ") + e.what());
  }
}

MetricReport run_evaluate(const EvaluateRequest& request_in) {
  EvaluateRequest request = request_in;
  quantize(request);
  validate_request(request);
  const TteWeightConfig tte_cfg = effective_tte_config(request);

  Dataset ds = read_dataset(request.dataset_path);
  if (request.task == Task::risk) {
    warn_grid_remainder(ds, request.grid);
  }
  std::vector<TaskSample> samples = sample_dataset(
      ds, request.task, request.sampler, request.grid, request.threads);

  std::vector<PredictionRecord> preds =
      filter_task(read_predictions(request.predictions_path, request.grid),
                  request.task);
  request.model = resolve_model(preds, request.model,
                                to_string(request.task));
  preds = filter_model(preds, request.model);

  JoinCoverage coverage;
  std::vector<EvalRow> rows =
      join(samples, preds, request.join_policy, &coverage);
  if (rows.empty()) {
    throw EmptyInput("no evaluation rows for task " +
                     to_string(request.task));
  }
  const int n_classes = task_arity(request.task, request.grid);

  MetricReport report;
  report.model = request.model;
  report.task = request.task;
  report.n_samples = static_cast<std::int64_t>(rows.size());
  report.grid = request.grid;
  report.join_coverage = coverage;
  report.base = summarize(rows, n_classes, request.threads);

  const std::string scheme = resolve_scheme(request);
  if (scheme != "none") {
    WeightedSection section;
    section.scheme = weight_scheme_from_string(scheme);
    section.export_weights = request.export_weights;
    std::vector<EvalRow> weighted_rows = rows;
    fill_weights(weighted_rows, section.scheme, tte_cfg, request.grid);
    section.metrics =
        summarize(weighted_rows, n_classes, request.threads).scalars;
    if (request.export_weights) {
      section.weights.reserve(weighted_rows.size());
      for (const auto& row : weighted_rows) {
        section.weights.push_back(row.weight);
      }
    }
    report.weighted = std::move(section);
  }

  std::vector<std::string> skipped;
  std::vector<InstanceSeries> series =
      request.skip_inconsistent_gt ? group_instances_skip(rows, &skipped)
                                   : group_instances(rows);
  report.n_instances = static_cast<std::int64_t>(series.size());
  report.n_inconsistent_skipped = static_cast<std::int64_t>(skipped.size());
  report.instance =
      instance_report(series, n_classes, request.threads,
                      request.wrong_label_offset, request.per_class_delta);

  if (request.task == Task::risk) {
    FoldedSection folded;
    folded.n_classes = n_folded_classes(request.grid);
    ConfusionAccumulator cm(folded.n_classes);
    for (const auto& row : rows) {
      const int gt = fold_to_risk_class(row.sample.label + 1, request.grid);
      const int pred = fold_to_risk_class(
          argmax_class(row.pred.confidences) + 1, request.grid);
      cm.add(gt, pred, 1.0);
    }
    folded.scalars.acc = accuracy(cm);
    folded.scalars.bacc = balanced_accuracy(cm, &folded.scalars.degenerate);
    PrecisionRecallF1 prf = reduced_prf(cm, &folded.scalars.degenerate);
    folded.scalars.prec = prf.prec;
    folded.scalars.recall = prf.recall;
    folded.scalars.f1 = prf.f1;
    report.risk_folded = std::move(folded);
  }

  if (request.with_scenario) {
    std::vector<ScenarioBin> bins =
        slice(rows, n_classes, request.binning, request.threads);
    if (request.experimental_pairs) {
      std::vector<ScenarioBin> pairs =
          slice_pairs(rows, n_classes, request.binning, request.threads);
      bins.insert(bins.end(), std::make_move_iterator(pairs.begin()),
                  std::make_move_iterator(pairs.end()));
    }
    report.scenario = std::move(bins);
  }

  report.config_echo = config_echo_json(request);
  return report;
}

nlohmann::json run_agreement(const EvaluateRequest& request_in) {
  EvaluateRequest request = request_in;
  quantize(request);
  validate(request.sampler);
  validate(request.grid);

  Dataset ds = read_dataset(request.dataset_path);
  std::vector<TaskSample> intention_samples = sample_dataset(
      ds, Task::intention, request.sampler, request.grid, request.threads);
  std::vector<TaskSample> action_samples = sample_dataset(
      ds, Task::action, request.sampler, request.grid, request.threads);

  std::vector<PredictionRecord> preds =
      read_predictions(request.predictions_path, request.grid);
  std::vector<PredictionRecord> intention_preds =
      filter_task(preds, Task::intention);
  std::vector<PredictionRecord> action_preds =
      filter_task(preds, Task::action);
  request.model = resolve_model(preds, request.model, "any-task");
  intention_preds = filter_model(intention_preds, request.model);
  action_preds = filter_model(action_preds, request.model);

  std::vector<EvalRow> intention_rows =
      join(intention_samples, intention_preds, request.join_policy);
  std::vector<EvalRow> action_rows =
      join(action_samples, action_preds, request.join_policy);

  AgreementReport agreed = agreement(intention_rows, action_rows);
  nlohmann::json out = nlohmann::json{
      {"model", agreed.model},
      {"agreement", agreement_to_json(agreed)},
      {"config_echo", config_echo_json(request)},
  };
  return out;
}

std::string run_sample(const std::string& dataset_path, Task task,
                       const SamplerConfig& cfg_in,
                       const RiskGridConfig& grid_in, int threads) {
  SamplerConfig cfg = cfg_in;
  RiskGridConfig grid = grid_in;
  quantize(cfg);
  quantize(grid);
  validate(cfg);
  validate(grid);
  Dataset ds = read_dataset(dataset_path);
  if (task == Task::risk) {
    warn_grid_remainder(ds, grid);
  }
  return samples_to_jsonl(sample_dataset(ds, task, cfg, grid, threads));
}

SynthOutputs run_synth(const SynthSpec& spec, const SamplerConfig& cfg,
                       const RiskGridConfig& grid,
                       const std::string& dataset_path,
                       const std::string& predictions_path) {
  validate(spec);
  validate(cfg);
  validate(grid);
  Dataset ds = synth_dataset(spec);
  write_dataset(ds, dataset_path);
  std::vector<PredictionRecord> preds =
      synth_predictions(ds, spec, cfg, grid);
  write_text(predictions_path, predictions_to_jsonl(preds));
  SynthOutputs out;
  out.n_instances = static_cast<std::int64_t>(ds.instances.size());
  out.n_predictions = static_cast<std::int64_t>(preds.size());
  return out;
}

}  // namespace pedeval

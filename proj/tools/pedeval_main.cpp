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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pedeval/canonical_json.hpp"
#include "pedeval/errors.hpp"
#include "pedeval/pipeline.hpp"
#include "pedeval/plot.hpp"

namespace {

using pedeval::EvaluateRequest;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw pedeval::IoFailure("cannot open for writing: " + path);
  }
  out << text;
  if (!out) {
    throw pedeval::IoFailure("write failed: " + path);
  }
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw pedeval::IoFailure("cannot open: " + path);
  }
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw pedeval::MalformedFile(path + ": " + e.what());
  }
}

// Mutable string mirrors for flags whose request fields are enums.
struct RequestFlags {
  std::string task = "intention";
  std::string join = "strict";
  std::string span = "full";
  std::string on_inconsistent_gt = "skip";
  std::vector<double> intention_bins{1.0 / 3.0, 2.0 / 3.0};
  std::vector<std::string> factors{"scale", "state", "speed", "signal",
                                   "road"};
};

void add_sampler_flags(CLI::App* cmd, EvaluateRequest& req,
                       RequestFlags& flags) {
  cmd->add_option("--obs-len", req.sampler.obs_len,
                  "Observation window length, frames")
      ->capture_default_str();
  cmd->add_option("--overlap", req.sampler.overlap_frac,
                  "Window overlap fraction in [0,1)")
      ->capture_default_str();
  cmd->add_option("--tte-min", req.sampler.tte_min,
                  "Minimum time to event, frames")
      ->capture_default_str();
  cmd->add_option("--tte-max", req.sampler.tte_max,
                  "Maximum time to event, frames")
      ->capture_default_str();
  cmd->add_option("--horizon", req.sampler.horizon,
                  "Risk prediction horizon, frames")
      ->capture_default_str();
  cmd->add_option("--intention-bins", flags.intention_bins,
                  "Two cuts mapping intention_prob to NCI/UI/CI")
      ->expected(2);
  cmd->add_flag("--keep-long-tte", req.sampler.keep_long_tte,
                "Keep action samples with tte > tte-max");
  cmd->add_option("--span", flags.span,
                  "Action/risk window span: full track or intention range")
      ->check(CLI::IsMember({"full", "intent"}))
      ->capture_default_str();
}

void add_grid_flags(CLI::App* cmd, EvaluateRequest& req) {
  cmd->add_option("--region-width", req.grid.region_width,
                  "Risk region width, pixels")
      ->capture_default_str();
  cmd->add_option("--n-regions", req.grid.n_regions,
                  "Number of vertical risk regions")
      ->capture_default_str();
  cmd->add_option("--sigma-r", req.grid.sigma_r,
                  "Risk weight spread parameter")
      ->capture_default_str();
}

void add_eval_flags(CLI::App* cmd, EvaluateRequest& req, RequestFlags& flags,
                    bool with_task) {
  cmd->add_option("--dataset", req.dataset_path, "Annotation dataset JSON")
      ->required();
  cmd->add_option("--predictions", req.predictions_path,
                  "Prediction log JSONL")
      ->required();
  if (with_task) {
    cmd->add_option("--task", flags.task, "Task to evaluate")
        ->check(CLI::IsMember({"intention", "action", "risk"}))
        ->capture_default_str();
  }
  cmd->add_option("--model", req.model,
                  "Model name (optional when the log has exactly one)");
  cmd->add_option("--join", flags.join, "Join policy")
      ->check(CLI::IsMember({"strict", "inner"}))
      ->capture_default_str();
  cmd->add_option("--threads", req.threads,
                  "Worker threads; 0 = PEDEVAL_THREADS or hardware")
      ->capture_default_str();
  add_sampler_flags(cmd, req, flags);
  add_grid_flags(cmd, req);
  cmd->add_option("--sigma-a", req.sigma_a, "TTE weight spread parameter")
      ->capture_default_str();
  cmd->add_option("--tte-max-ref", req.tte_max_ref,
                  "TTE weight reference; 0 = follow --tte-max")
      ->capture_default_str();
  cmd->add_option("--scheme", req.scheme,
                  "Weighting scheme: auto, none, uniform, tte, risk_region")
      ->check(CLI::IsMember({"auto", "none", "uniform", "tte", "risk_region",
                             "risk"}))
      ->capture_default_str();
  cmd->add_option("--wrong-label-offset", req.wrong_label_offset,
                  "Hard-metric designated wrong label: (gt + offset) mod K")
      ->capture_default_str();
  cmd->add_flag("--per-class-delta", req.per_class_delta,
                "Report conf_delta for every class");
  cmd->add_flag("--export-weights", req.export_weights,
                "Embed per-row sample weights in the report");
  cmd->add_option("--on-inconsistent-gt", flags.on_inconsistent_gt,
                  "Instances whose samples disagree on the label")
      ->check(CLI::IsMember({"skip", "error"}))
      ->capture_default_str();
  cmd->add_option("--scale-bins", req.binning.scale_bins,
                  "Pedestrian scale bin cuts, pixels")
      ->delimiter(',');
  cmd->add_option("--speed-bins", req.binning.speed_bins,
                  "Ego speed bin cuts, km/h; first cut must be 0")
      ->delimiter(',');
  cmd->add_option("--min-bin-samples", req.binning.min_samples,
                  "Bins below this count are flagged low_confidence")
      ->capture_default_str();
  cmd->add_option("--factors", flags.factors, "Scenario factors to slice by")
      ->delimiter(',');
  cmd->add_flag("--experimental", req.experimental_pairs,
                "Enable cross-factor scenario pairs");
}

void apply_flags(EvaluateRequest& req, const RequestFlags& flags,
                 bool with_task) {
  if (with_task) {
    req.task = pedeval::task_from_string(flags.task);
  }
  req.join_policy = pedeval::join_policy_from_string(flags.join);
  req.sampler.span_full_track = flags.span == "full";
  req.skip_inconsistent_gt = flags.on_inconsistent_gt == "skip";
  if (flags.intention_bins.size() != 2) {
    throw pedeval::ValidationError("--intention-bins takes two values");
  }
  req.sampler.intention_bins = {flags.intention_bins[0],
                                flags.intention_bins[1]};
  req.binning.factors.clear();
  for (const auto& name : flags.factors) {
    req.binning.factors.push_back(pedeval::scenario_factor_from_string(name));
  }
}

void write_report_outputs(const pedeval::MetricReport& report,
                          const std::string& out_path,
                          const std::string& csv_path,
                          const std::string& md_path) {
  emit(out_path, pedeval::dump_canonical(pedeval::report_to_json(report)));
  if (!csv_path.empty()) {
    write_text_file(csv_path, pedeval::report_to_csv(report));
  }
  if (!md_path.empty()) {
    write_text_file(md_path, pedeval::report_to_markdown(report));
  }
}

void setup_ingest_check(CLI::App& app) {
  auto* cmd = app.add_subcommand("ingest-check",
                                 "Validate an annotation dataset file");
  auto dataset = std::make_shared<std::string>();
  cmd->add_option("--dataset", *dataset, "Annotation dataset JSON")
      ->required();
  cmd->callback([dataset]() {
    pedeval::Dataset ds = pedeval::read_dataset(*dataset);
    std::int64_t frames = 0;
    for (const auto& inst : ds.instances) {
      frames += static_cast<std::int64_t>(inst.frames.size());
    }
    std::cout << "ok: " << ds.videos.size() << " videos, "
              << ds.instances.size() << " instances, " << frames
              << " observations\n";
  });
}

void setup_sample(CLI::App& app) {
  auto* cmd =
      app.add_subcommand("sample", "Extract task samples to JSONL");
  auto req = std::make_shared<EvaluateRequest>();
  auto flags = std::make_shared<RequestFlags>();
  auto out = std::make_shared<std::string>();
  cmd->add_option("--dataset", req->dataset_path, "Annotation dataset JSON")
      ->required();
  cmd->add_option("--task", flags->task, "Task to sample")
      ->check(CLI::IsMember({"intention", "action", "risk"}))
      ->capture_default_str();
  cmd->add_option("--threads", req->threads,
                  "Worker threads; 0 = PEDEVAL_THREADS or hardware")
      ->capture_default_str();
  add_sampler_flags(cmd, *req, *flags);
  add_grid_flags(cmd, *req);
  cmd->add_option("--out", *out, "Output path; - or absent = stdout");
  cmd->callback([req, flags, out]() {
    apply_flags(*req, *flags, true);
    emit(*out, pedeval::run_sample(req->dataset_path, req->task, req->sampler,
                                   req->grid, req->threads));
  });
}

void setup_evaluate(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "evaluate", "Score a prediction log against a dataset");
  auto req = std::make_shared<EvaluateRequest>();
  auto flags = std::make_shared<RequestFlags>();
  auto out = std::make_shared<std::string>();
  auto csv = std::make_shared<std::string>();
  auto md = std::make_shared<std::string>();
  add_eval_flags(cmd, *req, *flags, true);
  cmd->add_flag("--scenario", req->with_scenario,
                "Include the scenario slice section");
  cmd->add_option("--out", *out, "Report JSON path; - or absent = stdout");
  cmd->add_option("--csv", *csv, "Also write a flat CSV metric table");
  cmd->add_option("--md", *md, "Also write a markdown summary");
  cmd->callback([req, flags, out, csv, md]() {
    apply_flags(*req, *flags, true);
    write_report_outputs(pedeval::run_evaluate(*req), *out, *csv, *md);
  });
}

void setup_scenario(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "scenario", "Evaluate with per-factor scenario slices");
  auto req = std::make_shared<EvaluateRequest>();
  auto flags = std::make_shared<RequestFlags>();
  auto out = std::make_shared<std::string>();
  auto csv = std::make_shared<std::string>();
  add_eval_flags(cmd, *req, *flags, true);
  cmd->add_option("--out", *out, "Report JSON path; - or absent = stdout");
  cmd->add_option("--csv", *csv, "Also write the slice table as CSV");
  cmd->callback([req, flags, out, csv]() {
    apply_flags(*req, *flags, true);
    req->with_scenario = true;
    pedeval::MetricReport report = pedeval::run_evaluate(*req);
    emit(*out, pedeval::dump_canonical(pedeval::report_to_json(report)));
    if (!csv->empty()) {
      write_text_file(*csv, pedeval::scenario_to_csv(*report.scenario));
    }
  });
}

void setup_agreement(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "agreement", "Joint intention/action correctness of one model");
  auto req = std::make_shared<EvaluateRequest>();
  auto flags = std::make_shared<RequestFlags>();
  auto out = std::make_shared<std::string>();
  add_eval_flags(cmd, *req, *flags, false);
  cmd->add_option("--out", *out, "Report JSON path; - or absent = stdout");
  cmd->callback([req, flags, out]() {
    apply_flags(*req, *flags, false);
    emit(*out, pedeval::dump_canonical(pedeval::run_agreement(*req)));
  });
}

void setup_synth(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "synth", "Generate a seeded synthetic dataset and prediction log");
  auto spec = std::make_shared<pedeval::SynthSpec>();
  auto req = std::make_shared<EvaluateRequest>();
  auto flags = std::make_shared<RequestFlags>();
  auto law = std::make_shared<std::string>("uniform");
  auto predictor = std::make_shared<std::string>("noisy");
  auto out_dataset = std::make_shared<std::string>();
  auto out_predictions = std::make_shared<std::string>();
  cmd->add_option("--n-instances", spec->n_instances, "Pedestrian instances")
      ->capture_default_str();
  cmd->add_option("--track-len-min", spec->track_len_min,
                  "Minimum track length, frames")
      ->capture_default_str();
  cmd->add_option("--track-len-max", spec->track_len_max,
                  "Maximum track length, frames")
      ->capture_default_str();
  cmd->add_option("--crossing-frac", spec->crossing_frac,
                  "Fraction of instances that cross")
      ->capture_default_str();
  cmd->add_option("--law", *law, "intention_prob law")
      ->check(CLI::IsMember({"uniform", "bimodal"}))
      ->capture_default_str();
  cmd->add_option("--predictor", *predictor, "Synthetic predictor")
      ->check(
          CLI::IsMember({"oracle", "noisy", "constant", "anti_oracle"}))
      ->capture_default_str();
  cmd->add_option("--noise-eps", spec->noise_eps,
                  "noisy: probability of a wrong label")
      ->capture_default_str();
  cmd->add_option("--const-conf", spec->const_conf,
                  "constant: confidence put on class 0")
      ->capture_default_str();
  cmd->add_option("--seed", spec->seed, "RNG seed")->capture_default_str();
  cmd->add_option("--model-name", spec->model_name,
                  "Model name in the log; default synth_<predictor>");
  cmd->add_option("--video-width", spec->video_width, "Video width, pixels")
      ->capture_default_str();
  cmd->add_option("--video-height", spec->video_height,
                  "Video height, pixels")
      ->capture_default_str();
  cmd->add_option("--fps", spec->fps, "Video frame rate")
      ->capture_default_str();
  add_sampler_flags(cmd, *req, *flags);
  add_grid_flags(cmd, *req);
  cmd->add_option("--out-dataset", *out_dataset, "Dataset output path")
      ->required();
  cmd->add_option("--out-predictions", *out_predictions,
                  "Prediction log output path")
      ->required();
  cmd->callback([spec, req, flags, law, predictor, out_dataset,
                 out_predictions]() {
    apply_flags(*req, *flags, false);
    spec->intention_law = pedeval::intention_law_from_string(*law);
    spec->predictor = pedeval::predictor_from_string(*predictor);
    pedeval::SynthOutputs result = pedeval::run_synth(
        *spec, req->sampler, req->grid, *out_dataset, *out_predictions);
    std::cout << "wrote " << *out_dataset << " (" << result.n_instances
              << " instances) and " << *out_predictions << " ("
              << result.n_predictions << " predictions)\n";
  });
}

void setup_plot(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "plot", "Render per-class AP bar charts from report JSON files");
  auto reports = std::make_shared<std::vector<std::string>>();
  auto out_dir = std::make_shared<std::string>(".");
  cmd->add_option("--report", *reports, "Report JSON path (repeatable)")
      ->required();
  cmd->add_option("--out-dir", *out_dir, "Directory for SVG output")
      ->capture_default_str();
  cmd->callback([reports, out_dir]() {
    for (const auto& path : *reports) {
      std::cout << pedeval::write_per_class_ap_svg(read_json_file(path),
                                                   *out_dir)
                << "\n";
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pedestrian behavior prediction benchmark evaluation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file; flags override it");
  setup_ingest_check(app);
  setup_sample(app);
  setup_evaluate(app);
  setup_scenario(app);
  setup_agreement(app);
  setup_synth(app);
  setup_plot(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const pedeval::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

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

#include "pedeval/report.hpp"

#include <cstdio>

#include "pedeval/canonical_json.hpp"

namespace pedeval {

namespace {

using nlohmann::json;

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

json conf_delta_to_json(const ConfDelta& d) {
  return json{{"max", d.max_delta}, {"avg", d.avg_delta}};
}

}  // namespace

nlohmann::json scalar_metrics_to_json(const ScalarMetrics& m) {
  json j;
  j["acc"] = m.acc;
  j["bacc"] = m.bacc;
  j["prec"] = m.prec;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["map"] = m.map;
  j["auc"] = m.auc;
  j["degenerate"] = m.degenerate;
  return j;
}

nlohmann::json instance_scalars_to_json(const InstanceScalars& m) {
  json j;
  j["acc"] = m.acc;
  j["bacc"] = m.bacc;
  j["prec"] = m.prec;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["degenerate"] = m.degenerate;
  return j;
}

nlohmann::json scenario_to_json(const std::vector<ScenarioBin>& bins) {
  json arr = json::array();
  for (const ScenarioBin& bin : bins) {
    json j;
    j["factor"] = bin.factor;
    j["bin"] = bin.bin;
    j["count"] = bin.count;
    j["low_confidence"] = bin.low_confidence;
    j["metrics"] = scalar_metrics_to_json(bin.metrics);
    arr.push_back(std::move(j));
  }
  return arr;
}

nlohmann::json agreement_to_json(const AgreementReport& report) {
  static const char* const kIntention[3] = {"NCI", "UI", "CI"};
  static const char* const kAction[2] = {"NC", "C"};
  json j;
  j["model"] = report.model;
  j["matched"] = report.matched;
  j["intention_unmatched"] = report.intention_unmatched;
  j["action_unmatched"] = report.action_unmatched;
  json cells = json::array();
  for (const AgreementCell& cell : report.cells) {
    cells.push_back(json{
        {"intention", kIntention[cell.intention_class]},
        {"action", kAction[cell.action_class]},
        {"outcome", to_string(cell.outcome)},
        {"count", cell.count},
        {"fraction", cell.fraction}});
  }
  j["cells"] = std::move(cells);
  json outcomes;
  for (int o = 0; o < 4; ++o) {
    const std::string name = to_string(static_cast<AgreementOutcome>(o));
    outcomes[name] = json{
        {"count", report.outcome_counts[static_cast<std::size_t>(o)]},
        {"fraction", report.outcome_fractions[static_cast<std::size_t>(o)]}};
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

nlohmann::json report_to_json(const MetricReport& report) {
  json j;
  j["model"] = report.model;
  j["task"] = to_string(report.task);
  j["n_samples"] = report.n_samples;
  j["n_instances"] = report.n_instances;
  j["n_inconsistent_skipped"] = report.n_inconsistent_skipped;
  j["base"] = scalar_metrics_to_json(report.base.scalars);

  json per_class = json::array();
  for (int c = 0; c < static_cast<int>(report.base.per_class.size()); ++c) {
    const PerClassMetrics& pc =
        report.base.per_class[static_cast<std::size_t>(c)];
    json pj;
    pj["class"] = label_name(report.task, c, report.grid);
    pj["prec"] = pc.prec;
    pj["recall"] = pc.recall;
    pj["f1"] = pc.f1;
    pj["ap"] = pc.ap ? json(*pc.ap) : json();
    pj["auc"] = pc.auc ? json(*pc.auc) : json();
    pj["gt_weight"] = pc.gt_weight;
    per_class.push_back(std::move(pj));
  }
  j["per_class"] = std::move(per_class);

  if (report.weighted) {
    json w;
    w["scheme"] = to_string(report.weighted->scheme);
    w["metrics"] = scalar_metrics_to_json(report.weighted->metrics);
    if (report.weighted->export_weights) {
      w["sample_weights"] = report.weighted->weights;
    }
    j["weighted"] = std::move(w);
  }

  j["soft"] = instance_scalars_to_json(report.instance.soft);
  j["hard"] = instance_scalars_to_json(report.instance.hard);
  j["conf_delta"] = conf_delta_to_json(report.instance.conf_delta);
  if (!report.instance.per_class_delta.empty()) {
    json arr = json::array();
    for (int c = 0;
         c < static_cast<int>(report.instance.per_class_delta.size()); ++c) {
      json d = conf_delta_to_json(
          report.instance.per_class_delta[static_cast<std::size_t>(c)]);
      d["class"] = label_name(report.task, c, report.grid);
      arr.push_back(std::move(d));
    }
    j["conf_delta_per_class"] = std::move(arr);
  }

  if (report.risk_folded) {
    json f;
    f["n_classes"] = report.risk_folded->n_classes;
    f["metrics"] = instance_scalars_to_json(report.risk_folded->scalars);
    j["risk_folded"] = std::move(f);
  }
  if (report.scenario) {
    j["scenario"] = scenario_to_json(*report.scenario);
  }
  if (report.agreement) {
    j["agreement"] = agreement_to_json(*report.agreement);
  }
  if (report.join_coverage) {
    j["join_coverage"] =
        json{{"matched", report.join_coverage->matched},
             {"missing_prediction", report.join_coverage->missing_prediction},
             {"orphan_prediction", report.join_coverage->orphan_prediction}};
  }
  j["config_echo"] = report.config_echo;
  return j;
}

std::string report_to_csv(const MetricReport& report) {
  std::string out = "section,metric,value\n";
  const auto emit = [&out](const std::string& section,
                           const std::string& metric, double value) {
    out += section + "," + metric + "," + fmt6(value) + "\n";
  };
  emit("base", "acc", report.base.scalars.acc);
  emit("base", "bacc", report.base.scalars.bacc);
  emit("base", "prec", report.base.scalars.prec);
  emit("base", "recall", report.base.scalars.recall);
  emit("base", "f1", report.base.scalars.f1);
  emit("base", "map", report.base.scalars.map);
  emit("base", "auc", report.base.scalars.auc);
  if (report.weighted) {
    const ScalarMetrics& m = report.weighted->metrics;
    const std::string section =
        "weighted_" + to_string(report.weighted->scheme);
    emit(section, "acc", m.acc);
    emit(section, "bacc", m.bacc);
    emit(section, "prec", m.prec);
    emit(section, "recall", m.recall);
    emit(section, "f1", m.f1);
    emit(section, "map", m.map);
    emit(section, "auc", m.auc);
  }
  const auto emit_instance = [&emit](const std::string& section,
                                     const InstanceScalars& m) {
    emit(section, "acc", m.acc);
    emit(section, "bacc", m.bacc);
    emit(section, "prec", m.prec);
    emit(section, "recall", m.recall);
    emit(section, "f1", m.f1);
  };
  emit_instance("soft", report.instance.soft);
  emit_instance("hard", report.instance.hard);
  emit("conf_delta", "max", report.instance.conf_delta.max_delta);
  emit("conf_delta", "avg", report.instance.conf_delta.avg_delta);
  if (report.risk_folded) {
    emit_instance("risk_folded", report.risk_folded->scalars);
  }
  for (int c = 0; c < static_cast<int>(report.base.per_class.size()); ++c) {
    const PerClassMetrics& pc =
        report.base.per_class[static_cast<std::size_t>(c)];
    const std::string section =
        "class_" + label_name(report.task, c, report.grid);
    emit(section, "prec", pc.prec);
    emit(section, "recall", pc.recall);
    emit(section, "f1", pc.f1);
    if (pc.ap) emit(section, "ap", *pc.ap);
    if (pc.auc) emit(section, "auc", *pc.auc);
  }
  return out;
}

std::string report_to_markdown(const MetricReport& report) {
  std::string out;
  out += "# Evaluation report\n\n";
  out += "- model: `" + report.model + "`\n";
  out += "- task: " + to_string(report.task) + "\n";
  out += "- samples: " + std::to_string(report.n_samples) + "\n";
  out += "- instances: " + std::to_string(report.n_instances) + "\n";
  if (report.n_inconsistent_skipped > 0) {
    out += "- instances skipped for inconsistent ground truth: " +
           std::to_string(report.n_inconsistent_skipped) + "\n";
  }
  out += "\n## Sample-level\n\n";
  out += "| set | Acc | bAcc | Prec | Recall | F1 | mAP | AUC |\n";
  out += "|---|---|---|---|---|---|---|---|\n";
  const auto scalar_row = [&out](const std::string& name,
                                 const ScalarMetrics& m) {
    out += "| " + name + " | " + fmt6(m.acc) + " | " + fmt6(m.bacc) + " | " +
           fmt6(m.prec) + " | " + fmt6(m.recall) + " | " + fmt6(m.f1) +
           " | " + fmt6(m.map) + " | " + fmt6(m.auc) + " |\n";
  };
  scalar_row("base", report.base.scalars);
  if (report.weighted) {
    scalar_row("weighted (" + to_string(report.weighted->scheme) + ")",
               report.weighted->metrics);
  }
  out += "\n## Instance-level\n\n";
  out += "| set | Acc | bAcc | Prec | Recall | F1 |\n";
  out += "|---|---|---|---|---|---|\n";
  const auto instance_row = [&out](const std::string& name,
                                   const InstanceScalars& m) {
    out += "| " + name + " | " + fmt6(m.acc) + " | " + fmt6(m.bacc) + " | " +
           fmt6(m.prec) + " | " + fmt6(m.recall) + " | " + fmt6(m.f1) +
           " |\n";
  };
  instance_row("soft", report.instance.soft);
  instance_row("hard", report.instance.hard);
  if (report.risk_folded) {
    instance_row("risk folded (" +
                     std::to_string(report.risk_folded->n_classes) +
                     " classes)",
                 report.risk_folded->scalars);
  }
  out += "\nconf_delta: max " + fmt6(report.instance.conf_delta.max_delta) +
         ", avg " + fmt6(report.instance.conf_delta.avg_delta) + "\n";
  out += "\n## Per-class\n\n";
  out += "| class | Prec | Recall | F1 | AP | AUC |\n";
  out += "|---|---|---|---|---|---|\n";
  for (int c = 0; c < static_cast<int>(report.base.per_class.size()); ++c) {
    const PerClassMetrics& pc =
        report.base.per_class[static_cast<std::size_t>(c)];
    out += "| " + label_name(report.task, c, report.grid) + " | " +
           fmt6(pc.prec) + " | " + fmt6(pc.recall) + " | " + fmt6(pc.f1) +
           " | " + (pc.ap ? fmt6(*pc.ap) : std::string("-")) + " | " +
           (pc.auc ? fmt6(*pc.auc) : std::string("-")) + " |\n";
  }
  return out;
}

std::string scenario_to_csv(const std::vector<ScenarioBin>& bins) {
  std::string out =
      "factor,bin,count,low_confidence,acc,bacc,prec,recall,f1,map,auc\n";
  for (const ScenarioBin& bin : bins) {
    // Bin labels contain commas ("(0,60]"), so they are always quoted.
    out += bin.factor + ",\"" + bin.bin + "\"," + std::to_string(bin.count) +
           "," + (bin.low_confidence ? "true" : "false") + "," +
           fmt6(bin.metrics.acc) + "," + fmt6(bin.metrics.bacc) + "," +
           fmt6(bin.metrics.prec) + "," + fmt6(bin.metrics.recall) + "," +
           fmt6(bin.metrics.f1) + "," + fmt6(bin.metrics.map) + "," +
           fmt6(bin.metrics.auc) + "\n";
  }
  return out;
}

}  // namespace pedeval

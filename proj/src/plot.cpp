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

#include "pedeval/plot.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "pedeval/canonical_json.hpp"
#include "pedeval/errors.hpp"
#include "pedeval/risk_grid.hpp"

namespace pedeval {

namespace {

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string hex2(int v) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02x", v);
  return buf;
}

// Linear blend from red (#d73027, high risk) to green (#1a9850, low risk).
std::string risk_shade(double t) {
  const int r = static_cast<int>(std::lround(0xd7 + t * (0x1a - 0xd7)));
  const int g = static_cast<int>(std::lround(0x30 + t * (0x98 - 0x30)));
  const int b = static_cast<int>(std::lround(0x27 + t * (0x50 - 0x27)));
  return "#" + hex2(r) + hex2(g) + hex2(b);
}

}  // namespace

std::string per_class_ap_svg(const nlohmann::json& report) {
  if (!report.is_object() || !report.contains("per_class") ||
      !report["per_class"].is_array() || report["per_class"].empty()) {
    throw MissingSection("report lacks a per_class section");
  }
  const std::string task = report.value("task", std::string("unknown"));
  const std::string model = report.value("model", std::string("unknown"));

  struct Bar {
    std::string name;
    double ap = 0.0;
    bool has_ap = false;
  };
  std::vector<Bar> bars;
  for (const auto& pc : report["per_class"]) {
    Bar bar;
    bar.name = pc.value("class", std::string("?"));
    if (pc.contains("ap") && pc["ap"].is_number()) {
      bar.ap = pc["ap"].get<double>();
      bar.has_ap = true;
    }
    bars.push_back(std::move(bar));
  }

  const double margin_left = 48.0;
  const double margin_right = 16.0;
  const double margin_top = 40.0;
  const double margin_bottom = 48.0;
  const double plot_w = std::max(320.0, 40.0 * static_cast<double>(bars.size()));
  const double plot_h = 240.0;
  const double width = margin_left + plot_w + margin_right;
  const double height = margin_top + plot_h + margin_bottom;
  const double slot = plot_w / static_cast<double>(bars.size());
  const double bar_w = slot * 0.64;

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt1(width) +
       "\" height=\"" + fmt1(height) + "\" viewBox=\"0 0 " + fmt1(width) +
       " " + fmt1(height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fmt1(width) + "\" height=\"" +
       fmt1(height) + "\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"" + fmt1(margin_left) + "\" y=\"22\" font-family=\"sans-serif\" "
       "font-size=\"14\">per-class AP: " + task + " / " + model + "</text>\n";

  // Risk charts shade each class slot by its folded risk class.
  if (task == "risk") {
    RiskGridConfig grid;
    grid.n_regions = static_cast<int>(bars.size());
    const double max_d = static_cast<double>(
        std::max(1, n_folded_classes(grid) - 1));
    for (std::size_t i = 0; i < bars.size(); ++i) {
      const double d = static_cast<double>(
          fold_to_risk_class(static_cast<int>(i) + 1, grid));
      const double x = margin_left + slot * static_cast<double>(i);
      s += "<rect x=\"" + fmt1(x) + "\" y=\"" + fmt1(margin_top) +
           "\" width=\"" + fmt1(slot) + "\" height=\"" + fmt1(plot_h) +
           "\" fill=\"" + risk_shade(d / max_d) + "\" opacity=\"0.25\"/>\n";
    }
  }

  for (int tick = 0; tick <= 4; ++tick) {
    const double v = static_cast<double>(tick) / 4.0;
    const double y = margin_top + plot_h * (1.0 - v);
    s += "<line x1=\"" + fmt1(margin_left) + "\" y1=\"" + fmt1(y) +
         "\" x2=\"" + fmt1(margin_left + plot_w) + "\" y2=\"" + fmt1(y) +
         "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + fmt1(margin_left - 8.0) + "\" y=\"" + fmt1(y + 4.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" "
         "text-anchor=\"end\">" + fmt2(v) + "</text>\n";
  }

  for (std::size_t i = 0; i < bars.size(); ++i) {
    const Bar& bar = bars[i];
    const double x =
        margin_left + slot * static_cast<double>(i) + (slot - bar_w) / 2.0;
    if (bar.has_ap) {
      const double h = plot_h * bar.ap;
      const double y = margin_top + plot_h - h;
      s += "<rect x=\"" + fmt1(x) + "\" y=\"" + fmt1(y) + "\" width=\"" +
           fmt1(bar_w) + "\" height=\"" + fmt1(h) +
           "\" fill=\"#4477aa\"/>\n";
      s += "<text x=\"" + fmt1(x + bar_w / 2.0) + "\" y=\"" + fmt1(y - 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" "
           "text-anchor=\"middle\">" + fmt3(bar.ap) + "</text>\n";
    } else {
      s += "<text x=\"" + fmt1(x + bar_w / 2.0) + "\" y=\"" +
           fmt1(margin_top + plot_h - 6.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" "
           "text-anchor=\"middle\">n/a</text>\n";
    }
    s += "<text x=\"" + fmt1(x + bar_w / 2.0) + "\" y=\"" +
         fmt1(margin_top + plot_h + 16.0) +
         "\" font-family=\"sans-serif\" font-size=\"10\" "
         "text-anchor=\"middle\">" + bar.name + "</text>\n";
  }

  s += "<line x1=\"" + fmt1(margin_left) + "\" y1=\"" +
       fmt1(margin_top + plot_h) + "\" x2=\"" + fmt1(margin_left + plot_w) +
       "\" y2=\"" + fmt1(margin_top + plot_h) +
       "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  s += "</svg>\n";
  return s;
}

std::string write_per_class_ap_svg(const nlohmann::json& report,
                                   const std::string& out_dir) {
  const std::string svg = per_class_ap_svg(report);
  const std::string task = report.value("task", std::string("unknown"));
  const std::string path = out_dir + "/" + task + "_per_class_ap.svg";
  write_text_file(path, svg);
  return path;
}

}  // namespace pedeval

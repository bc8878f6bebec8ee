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

#ifndef PEDEVAL_PLOT_HPP_
#define PEDEVAL_PLOT_HPP_

#include <string>

#include <json.hpp>

namespace pedeval {

// Self-contained SVG bar chart of per-class AP from a report JSON. Risk
// reports get background bands shaded by folded risk class (red center,
// green edges). Throws MissingSection when the report lacks per_class.
// Output is deterministic: same report, same bytes.
std::string per_class_ap_svg(const nlohmann::json& report);

// Writes <task>_per_class_ap.svg under out_dir and returns the path.
std::string write_per_class_ap_svg(const nlohmann::json& report,
                                   const std::string& out_dir);

}  // namespace pedeval

#endif  // PEDEVAL_PLOT_HPP_

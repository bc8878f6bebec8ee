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

#ifndef PEDEVAL_RISK_GRID_HPP_
#define PEDEVAL_RISK_GRID_HPP_

namespace pedeval {

// Vertical partition of the image plane into equal-width risk regions.
// Regions are 1-based; risk is highest at the center band(s) and decreases
// symmetrically toward the edges.
struct RiskGridConfig {
  int region_width = 160;  // pixels
  int n_regions = 12;
  double sigma_r = 0.5;

  // Center class m = ceil(n_regions / 2). For even counts the two center
  // regions are m and m + 1.
  int center_m() const { return (n_regions + 1) / 2; }

  bool operator==(const RiskGridConfig&) const = default;
};

// Throws ValidationError unless region_width > 0, n_regions >= 2, sigma_r > 0.
void validate(const RiskGridConfig& cfg);

// Region containing a bbox center. Boundaries k*region_width belong to
// region k+1; centers outside [0, image_width) clamp to the nearest edge
// region, and regions past n_regions fold into the last one.
int assign_region(double center_x, double image_width,
                  const RiskGridConfig& cfg);

// Symmetric distance from the center class. With m = ceil(n/2):
// d = |region - m| when n is odd or region <= m, else |region - m - 1|.
int class_distance(int region, const RiskGridConfig& cfg);

// Unnormalized weight exp(-0.5 * (d_cls / (m * sigma_r))^2), in (0, 1].
double risk_weight(int region, const RiskGridConfig& cfg);

// Folded risk class, 0 (center, highest risk) .. m-1 (edge). Equal to d_cls.
int fold_to_risk_class(int region, const RiskGridConfig& cfg);

// Number of distinct folded classes, ceil(n_regions / 2).
int n_folded_classes(const RiskGridConfig& cfg);

// False when n_regions * region_width != image_width; callers emit a warning
// and the last region absorbs the remainder.
bool grid_covers_width(int image_width, const RiskGridConfig& cfg);

}  // namespace pedeval

#endif  // PEDEVAL_RISK_GRID_HPP_

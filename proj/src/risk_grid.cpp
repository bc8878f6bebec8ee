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

#include "pedeval/risk_grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "pedeval/errors.hpp"

namespace pedeval {

void validate(const RiskGridConfig& cfg) {
  if (cfg.region_width <= 0) {
    throw ValidationError("region_width must be positive");
  }
  if (cfg.n_regions < 2) {
    throw ValidationError("n_regions must be at least 2");
  }
  if (!(cfg.sigma_r > 0.0)) {
    throw ValidationError("sigma_r must be positive");
  }
}

int assign_region(double center_x, double image_width,
                  const RiskGridConfig& cfg) {
  validate(cfg);
  if (!(image_width > 0.0)) {
    throw ValidationError("image_width must be positive");
  }
  const double x =
      std::clamp(center_x, 0.0, std::nextafter(image_width, 0.0));
  auto band = static_cast<std::int64_t>(
      std::floor(x / static_cast<double>(cfg.region_width)));
  band = std::clamp<std::int64_t>(band, 0, cfg.n_regions - 1);
  return static_cast<int>(band) + 1;
}

int class_distance(int region, const RiskGridConfig& cfg) {
  validate(cfg);
  if (region < 1 || region > cfg.n_regions) {
    throw ValidationError("region " + std::to_string(region) +
                          " outside [1, " + std::to_string(cfg.n_regions) +
                          "]");
  }
  const int m = cfg.center_m();
  if (cfg.n_regions % 2 == 1 || region <= m) {
    return std::abs(region - m);
  }
  return std::abs(region - m - 1);
}

double risk_weight(int region, const RiskGridConfig& cfg) {
  const double d = static_cast<double>(class_distance(region, cfg));
  const double z = d / (static_cast<double>(cfg.center_m()) * cfg.sigma_r);
  return std::exp(-0.5 * z * z);
}

int fold_to_risk_class(int region, const RiskGridConfig& cfg) {
  return class_distance(region, cfg);
}

int n_folded_classes(const RiskGridConfig& cfg) { return cfg.center_m(); }

bool grid_covers_width(int image_width, const RiskGridConfig& cfg) {
  return static_cast<std::int64_t>(cfg.n_regions) * cfg.region_width ==
         image_width;
}

}  // namespace pedeval

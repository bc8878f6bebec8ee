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

#include <cmath>
#include <set>

#include <doctest.h>

#include "pedeval/errors.hpp"
#include "pedeval/risk_grid.hpp"

using namespace pedeval;

namespace {
const RiskGridConfig kDefault;
}  // namespace

TEST_CASE("assign_region maps centers to 1-based bands") {
  CHECK(assign_region(959.5, 1920.0, kDefault) == 6);
  CHECK(assign_region(960.0, 1920.0, kDefault) == 7);
  CHECK(assign_region(-5.0, 1920.0, kDefault) == 1);
  CHECK(assign_region(2000.0, 1920.0, kDefault) == 12);
  CHECK(assign_region(0.0, 1920.0, kDefault) == 1);
  CHECK(assign_region(80.0, 1920.0, kDefault) == 1);
  CHECK(assign_region(1919.999, 1920.0, kDefault) == 12);
}

TEST_CASE("assign_region boundaries belong to the right band") {
  for (int k = 1; k < kDefault.n_regions; ++k) {
    const double boundary = k * 160.0;
    CHECK(assign_region(boundary, 1920.0, kDefault) == k + 1);
    CHECK(assign_region(boundary - 0.001, 1920.0, kDefault) == k);
  }
}

TEST_CASE("assign_region partitions the image width") {
  for (int x = 0; x < 1920; ++x) {
    const int r = assign_region(x + 0.5, 1920.0, kDefault);
    CHECK(r == x / 160 + 1);
  }
}

TEST_CASE("assign_region clamps into a short grid") {
  // 1280-px video: the 8th region absorbs everything to the right.
  RiskGridConfig grid;
  CHECK_FALSE(grid_covers_width(1280, grid));
  CHECK(grid_covers_width(1920, grid));
  grid.n_regions = 8;
  CHECK(grid_covers_width(1280, grid));
  CHECK(assign_region(1279.0, 1280.0, grid) == 8);
  CHECK(assign_region(5000.0, 1280.0, grid) == 8);
}

TEST_CASE("class_distance casework") {
  CHECK(class_distance(6, kDefault) == 0);
  CHECK(class_distance(7, kDefault) == 0);
  CHECK(class_distance(1, kDefault) == 5);
  CHECK(class_distance(12, kDefault) == 5);
  CHECK(class_distance(4, kDefault) == 2);
  CHECK(class_distance(9, kDefault) == 2);

  RiskGridConfig five;
  five.n_regions = 5;
  CHECK(five.center_m() == 3);
  CHECK(class_distance(3, five) == 0);
  CHECK(class_distance(1, five) == 2);
  CHECK(class_distance(5, five) == 2);
}

TEST_CASE("class_distance is symmetric for even grids") {
  for (int n = 2; n <= 12; n += 2) {
    RiskGridConfig grid;
    grid.n_regions = n;
    for (int r = 1; r <= n; ++r) {
      CHECK(class_distance(r, grid) == class_distance(n + 1 - r, grid));
    }
  }
}

TEST_CASE("fold_to_risk_class yields exactly ceil(n/2) values") {
  for (int n = 2; n <= 13; ++n) {
    RiskGridConfig grid;
    grid.n_regions = n;
    std::set<int> seen;
    for (int r = 1; r <= n; ++r) {
      seen.insert(fold_to_risk_class(r, grid));
    }
    CHECK(static_cast<int>(seen.size()) == (n + 1) / 2);
    CHECK(n_folded_classes(grid) == (n + 1) / 2);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == (n + 1) / 2 - 1);
  }
}

TEST_CASE("risk_weight values") {
  CHECK(risk_weight(6, kDefault) == 1.0);
  CHECK(risk_weight(7, kDefault) == 1.0);
  CHECK(std::abs(risk_weight(1, kDefault) - std::exp(-0.5 * (5.0 / 3.0) * (5.0 / 3.0))) <= 1e-12);
  CHECK(std::abs(risk_weight(1, kDefault) - 0.24935220877729616) <= 1e-12);
  CHECK(std::abs(risk_weight(4, kDefault) - 0.8007374029168081) <= 1e-12);
}

TEST_CASE("risk_weight decreases with distance and is symmetric") {
  double prev = 2.0;
  for (int r = 6; r >= 1; --r) {
    const double w = risk_weight(r, kDefault);
    CHECK(w < prev);
    CHECK(w > 0.0);
    prev = w;
  }
  for (int r = 1; r <= 12; ++r) {
    CHECK(risk_weight(r, kDefault) == risk_weight(13 - r, kDefault));
  }
}

TEST_CASE("grid validation rejects bad configs") {
  RiskGridConfig grid;
  grid.region_width = 0;
  CHECK_THROWS_AS(validate(grid), ValidationError);
  grid = RiskGridConfig{};
  grid.n_regions = 1;
  CHECK_THROWS_AS(validate(grid), ValidationError);
  grid = RiskGridConfig{};
  grid.sigma_r = 0.0;
  CHECK_THROWS_AS(validate(grid), ValidationError);
  CHECK_THROWS_AS(class_distance(0, kDefault), ValidationError);
  CHECK_THROWS_AS(class_distance(13, kDefault), ValidationError);
}

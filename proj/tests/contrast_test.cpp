// Copyright 2026 The CEQI Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "iqa/contrast.hpp"
#include "support/test_images.hpp"

namespace iqa {
namespace {

TEST(ContrastMap, ConstantImageIsZero) {
  EXPECT_EQ(contrast_map(RasterGrid::Constant(9, 9, 80.0), MetricConfig{}).maxCoeff(), 0.0);
}

TEST(ContrastMap, CheckerboardInteriorCell) {
  RasterGrid g(6, 6);
  for (Eigen::Index r = 0; r < 6; ++r) {
    for (Eigen::Index c = 0; c < 6; ++c) g(r, c) = (r + c) % 2 == 0 ? 255.0 : 0.0;
  }
  const RasterGrid cm = contrast_map(g, MetricConfig{});
  // (2, 2) is a 255 cell: its 3x3 window holds five 255s and four 0s.
  // mean 1275 / 9, sum of squared deviations 144500, divided by N - 1 = 8.
  const double expected = std::sqrt(144500.0 / 8.0);
  EXPECT_NEAR(cm(2, 2), expected, 1e-9);
  EXPECT_NEAR(cm(2, 2), 134.397, 1e-3);
  // A 0 cell sees four 255s and five 0s; same spread.
  EXPECT_NEAR(cm(2, 3), expected, 1e-9);
}

TEST(ContrastMap, WindowSpanningGridMatchesGlobalFormula) {
  const RasterGrid g = testing::random_grid(5, 5, 8);
  MetricConfig cfg;
  cfg.contrast_window = 5;
  const double global = std::sqrt((g - g.mean()).square().sum() / 24.0);
  EXPECT_NEAR(contrast_map(g, cfg)(2, 2), global, 1e-12);
}

TEST(ContrastMap, WindowTooLarge) {
  MetricConfig cfg;
  cfg.contrast_window = 7;
  try {
    contrast_map(RasterGrid::Zero(5, 5), cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWindowTooLarge);
  }
}

TEST(ContrastMapProperty, OffsetInvariantAndScaleEquivariant) {
  std::mt19937_64 rng(3);
  const MetricConfig cfg;
  for (int trial = 0; trial < 10; ++trial) {
    const RasterGrid g = testing::random_grid(12, 15, rng());
    const RasterGrid base = contrast_map(g, cfg);
    const double offset = double(rng() % 200) - 100.0;
    EXPECT_LT((contrast_map((g + offset).eval(), cfg) - base).abs().maxCoeff(), 1e-12);
    const double k = 0.25 + double(rng() % 100) / 10.0;
    const RasterGrid scaled = contrast_map((k * g).eval(), cfg);
    EXPECT_LT(((scaled - k * base).abs() / (k * base.maxCoeff())).maxCoeff(), 1e-12);
    EXPECT_GE(base.minCoeff(), 0.0);
  }
}

}  // namespace
}  // namespace iqa

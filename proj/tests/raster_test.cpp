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
#include <limits>
#include <vector>

#include "iqa/raster.hpp"
#include "support/test_images.hpp"

namespace iqa {
namespace {

using testing::ScratchDir;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an iqa::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(GridFromValues, AcceptsMatchingLength) {
  const std::vector<double> zeros(9, 0.0);
  const RasterGrid g = grid_from_values(3, 3, zeros);
  EXPECT_EQ(g.rows(), 3);
  EXPECT_EQ(g.cols(), 3);
  EXPECT_TRUE((g == 0.0).all());
}

TEST(GridFromValues, IsRowMajor) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6};
  const RasterGrid g = grid_from_values(2, 3, v);
  EXPECT_EQ(g(0, 2), 3.0);
  EXPECT_EQ(g(1, 0), 4.0);
}

TEST(GridFromValues, RejectsLengthMismatch) {
  const std::vector<double> five(5, 1.0);
  EXPECT_EQ(code_of([&] { grid_from_values(2, 3, five); }), ErrorCode::kLengthMismatch);
}

TEST(GridFromValues, RejectsNonFinite) {
  std::vector<double> v(9, 1.0);
  v[4] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_EQ(code_of([&] { grid_from_values(3, 3, v); }), ErrorCode::kNonFiniteValue);
  v[4] = std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { grid_from_values(3, 3, v); }), ErrorCode::kNonFiniteValue);
}

TEST(LoadImage, WhiteRgbIsFullLuma) {
  ScratchDir dir("raster");
  const std::vector<std::uint8_t> white(3 * 3 * 3, 255);
  testing::write_png(dir / "white.png", 3, 3, 3, white);
  const RasterGrid g = load_image(dir / "white.png");
  EXPECT_TRUE((g == 255.0).all());
}

TEST(LoadImage, RgbUsesBt601Weights) {
  ScratchDir dir("raster");
  std::vector<std::uint8_t> px;
  for (int i = 0; i < 9; ++i) px.insert(px.end(), {100, 200, 50});
  testing::write_png(dir / "rgb.png", 3, 3, 3, px);
  testing::write_rgb_bmp(dir / "rgb.bmp", 3, 3, px);
  for (const char* name : {"rgb.png", "rgb.bmp"}) {
    const RasterGrid g = load_image(dir / name);
    EXPECT_NEAR(g(1, 1), 153.0, 1e-9) << name;
  }
}

TEST(LoadImage, CustomLumaWeights) {
  ScratchDir dir("raster");
  std::vector<std::uint8_t> px;
  for (int i = 0; i < 9; ++i) px.insert(px.end(), {100, 200, 50});
  testing::write_png(dir / "rgb.png", 3, 3, 3, px);
  const RasterGrid g = load_image(dir / "rgb.png", {1.0, 0.0, 0.0});
  EXPECT_EQ(g(0, 0), 100.0);
}

TEST(LoadImage, TooSmallIsRejected) {
  ScratchDir dir("raster");
  testing::write_png(dir / "one.png", 1, 1, 1, {7});
  testing::write_png(dir / "two.png", 2, 2, 3, std::vector<std::uint8_t>(12, 255));
  EXPECT_EQ(code_of([&] { load_image(dir / "one.png"); }), ErrorCode::kDimensionTooSmall);
  EXPECT_EQ(code_of([&] { load_image(dir / "two.png"); }), ErrorCode::kDimensionTooSmall);
}

TEST(LoadImage, MissingFile) {
  EXPECT_EQ(code_of([] { load_image("/nonexistent/image.png"); }), ErrorCode::kFileNotFound);
}

TEST(LoadImage, CorruptFiles) {
  ScratchDir dir("raster");
  testing::write_text(dir / "junk.png", "definitely not an image");
  EXPECT_EQ(code_of([&] { load_image(dir / "junk.png"); }), ErrorCode::kDecodeError);

  // Valid PNG signature with a truncated body.
  testing::write_png(dir / "ok.png", 4, 4, 1, std::vector<std::uint8_t>(16, 9));
  std::string bytes = testing::read_text(dir / "ok.png");
  testing::write_text(dir / "cut.png", bytes.substr(0, 20));
  EXPECT_EQ(code_of([&] { load_image(dir / "cut.png"); }), ErrorCode::kDecodeError);

  testing::write_text(dir / "cut.bmp", "BM" + std::string(30, '\0'));
  EXPECT_EQ(code_of([&] { load_image(dir / "cut.bmp"); }), ErrorCode::kDecodeError);
}

TEST(LoadImage, FixturesDecode) {
  const RasterGrid gray_bmp = load_image(testing::data_path("camera_gray_64.bmp"));
  EXPECT_EQ(gray_bmp.rows(), 64);
  EXPECT_EQ(gray_bmp.cols(), 64);
  const RasterGrid rgb_bmp = load_image(testing::data_path("chelsea_rgb_96x128.bmp"));
  EXPECT_EQ(rgb_bmp.rows(), 96);
  EXPECT_EQ(rgb_bmp.cols(), 128);
  const RasterGrid rgb_png = load_image(testing::data_path("astronaut_rgb_128.png"));
  EXPECT_EQ(rgb_png.rows(), 128);
  for (const RasterGrid* g : {&gray_bmp, &rgb_bmp, &rgb_png}) {
    EXPECT_GE(g->minCoeff(), 0.0);
    EXPECT_LE(g->maxCoeff(), 255.0);
  }
}

// Both encodings of the same gray pixels decode to the same exact values.
TEST(LoadImage, GrayPaletteBmpMatchesPng) {
  const RasterGrid from_bmp = load_image(testing::data_path("camera_gray_64.bmp"));
  ScratchDir dir("raster");
  testing::write_gray_png(dir / "same.png", from_bmp);
  const RasterGrid from_png = load_image(dir / "same.png");
  EXPECT_TRUE((from_bmp == from_png).all());
}

TEST(LoadImageProperty, GrayscaleRoundTripIsExact) {
  ScratchDir dir("raster");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(seed);
    const int h = 3 + int(rng() % 20);
    const int w = 3 + int(rng() % 20);
    std::vector<std::uint8_t> px(std::size_t(h) * w);
    for (auto& p : px) p = std::uint8_t(rng() % 256);
    const auto path = dir / ("g" + std::to_string(seed) + ".png");
    testing::write_png(path, w, h, 1, px);
    const RasterGrid g = load_image(path);
    ASSERT_EQ(g.rows(), h);
    for (Eigen::Index i = 0; i < g.size(); ++i) ASSERT_EQ(g(i), double(px[std::size_t(i)]));
    // Deterministic decode.
    EXPECT_TRUE((load_image(path) == g).all());
  }
}

TEST(ImagePair, RejectsShapeMismatchNamingBoth) {
  try {
    ImagePair(RasterGrid::Zero(4, 5), RasterGrid::Zero(5, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_NE(std::string(e.what()).find("4x5"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("5x4"), std::string::npos);
  }
}

TEST(ImagePair, RejectsTinyImages) {
  EXPECT_EQ(code_of([] { ImagePair(RasterGrid::Zero(2, 9), RasterGrid::Zero(2, 9)); }),
            ErrorCode::kDimensionTooSmall);
}

}  // namespace
}  // namespace iqa

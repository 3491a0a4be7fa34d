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

#ifndef IQA_RASTER_HPP_
#define IQA_RASTER_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>

#include <Eigen/Core>

#include "iqa/error.hpp"

namespace iqa {

// Dense 2D grid, row-major, rows == image height. All maps (images,
// saliency, contrast, similarity) share this layout.
template <typename Scalar>
using Grid = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RasterGrid = Grid<double>;

// Smallest side accepted by the metrics; the 3x3 block split needs it.
inline constexpr Eigen::Index kMinMetricSide = 3;

// Weights applied to (R, G, B) when decoding color images.
using LumaWeights = std::array<double, 3>;
inline constexpr LumaWeights kBt601Luma = {0.299, 0.587, 0.114};

std::string shape_string(Eigen::Index rows, Eigen::Index cols);

template <typename Derived>
std::string shape_string(const Eigen::DenseBase<Derived>& grid) {
  return shape_string(grid.rows(), grid.cols());
}

// Throws kDimensionTooSmall unless both sides are at least kMinMetricSide.
void require_metric_size(Eigen::Index rows, Eigen::Index cols);

// Throws kDimensionMismatch naming both shapes.
void require_same_shape(Eigen::Index rows_a, Eigen::Index cols_a,
                        Eigen::Index rows_b, Eigen::Index cols_b);

template <typename A, typename B>
void require_same_shape(const Eigen::DenseBase<A>& a, const Eigen::DenseBase<B>& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
}

// Builds a grid from row-major values. Throws kLengthMismatch or
// kNonFiniteValue.
RasterGrid grid_from_values(Eigen::Index height, Eigen::Index width,
                            std::span<const double> values);

// Decodes an 8-bit BMP or PNG into luma in [0, 255]. Gray pixels (and RGB
// pixels with r == g == b) keep their exact value; other colors go through
// `luma`. Alpha is ignored.
RasterGrid load_image(const std::filesystem::path& path,
                      const LumaWeights& luma = kBt601Luma);

// Reference/distorted pair with matching, metric-sized dimensions.
class ImagePair {
 public:
  ImagePair(RasterGrid reference, RasterGrid distorted);

  static ImagePair load(const std::filesystem::path& reference,
                        const std::filesystem::path& distorted,
                        const LumaWeights& luma = kBt601Luma);

  const RasterGrid& reference() const noexcept { return reference_; }
  const RasterGrid& distorted() const noexcept { return distorted_; }

 private:
  RasterGrid reference_;
  RasterGrid distorted_;
};

}  // namespace iqa

#endif  // IQA_RASTER_HPP_

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

#include "iqa/raster.hpp"

#include <cmath>
#include <utility>

namespace iqa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kDecodeError: return "DecodeError";
    case ErrorCode::kDimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kFilterTooLarge: return "FilterTooLarge";
    case ErrorCode::kWindowTooLarge: return "WindowTooLarge";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kConstantVector: return "ConstantVector";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kFailureBudgetExceeded: return "FailureBudgetExceeded";
  }
  return "Unknown";
}

std::string shape_string(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

void require_metric_size(Eigen::Index rows, Eigen::Index cols) {
  if (rows < kMinMetricSide || cols < kMinMetricSide) {
    throw Error(ErrorCode::kDimensionTooSmall,
                "image is " + shape_string(rows, cols) + ", need at least " +
                    shape_string(kMinMetricSide, kMinMetricSide));
  }
}

void require_same_shape(Eigen::Index rows_a, Eigen::Index cols_a, Eigen::Index rows_b,
                        Eigen::Index cols_b) {
  if (rows_a != rows_b || cols_a != cols_b) {
    throw Error(ErrorCode::kDimensionMismatch, "dimension mismatch: " +
                                                   shape_string(rows_a, cols_a) + " vs " +
                                                   shape_string(rows_b, cols_b));
  }
}

RasterGrid grid_from_values(Eigen::Index height, Eigen::Index width,
                            std::span<const double> values) {
  if (height < 0 || width < 0 || static_cast<Eigen::Index>(values.size()) != height * width) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(values.size()) + " values cannot fill a " +
                    shape_string(height, width) + " grid");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFiniteValue, "value " + std::to_string(i) + " is not finite");
    }
  }
  return Eigen::Map<const RasterGrid>(values.data(), height, width);
}

ImagePair::ImagePair(RasterGrid reference, RasterGrid distorted)
    : reference_(std::move(reference)), distorted_(std::move(distorted)) {
  if (reference_.rows() != distorted_.rows() || reference_.cols() != distorted_.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "dimension mismatch: reference is " + shape_string(reference_) +
                    ", distorted is " + shape_string(distorted_));
  }
  require_metric_size(reference_.rows(), reference_.cols());
}

ImagePair ImagePair::load(const std::filesystem::path& reference,
                          const std::filesystem::path& distorted, const LumaWeights& luma) {
  return ImagePair(load_image(reference, luma), load_image(distorted, luma));
}

}  // namespace iqa

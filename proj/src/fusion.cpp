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

#include "iqa/fusion.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace iqa {

CenterRegion center_region(Eigen::Index height, Eigen::Index width) {
  require_metric_size(height, width);
  CenterRegion region;
  region.h_mid = (height + 2) / 3;
  region.w_mid = (width + 2) / 3;
  region.row_min = region.h_mid;
  region.col_min = region.w_mid;
  region.row_max = std::min(height, region.row_min + region.h_mid);
  region.col_max = std::min(width, region.col_min + region.w_mid);
  return region;
}

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kCeqi: return "ceqi";
    case MetricKind::kQs: return "qs";
    case MetricKind::kPsnr: return "psnr";
  }
  return "unknown";
}

MetricKind parse_metric_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "ceqi") return MetricKind::kCeqi;
  if (lower == "qs") return MetricKind::kQs;
  if (lower == "psnr") return MetricKind::kPsnr;
  throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + std::string(name) + "'");
}

QualityScore score(const ImagePair& pair, MetricKind kind, const MetricConfig& cfg) {
  switch (kind) {
    case MetricKind::kCeqi: return ceqi(pair, cfg);
    case MetricKind::kQs: return qs_baseline(pair, cfg);
    case MetricKind::kPsnr: return psnr(pair);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown metric");
}

}  // namespace iqa

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

#ifndef IQA_CONFIG_HPP_
#define IQA_CONFIG_HPP_

#include <filesystem>
#include <string>

#include <json.hpp>

#include "iqa/raster.hpp"

namespace iqa {

// Every free constant of the metric. The defaults are uncalibrated
// starting points; all of them can be overridden from a JSON file or the
// command line.
struct MetricConfig {
  double c1 = 0.04;               // saliency similarity stabilizer
  double c2 = 0.001;              // contrast similarity stabilizer
  double w1 = 1.0;                // saliency channel weight
  double w2 = 1.0;                // contrast channel weight
  int mean_filter_n = 3;          // log-spectrum smoothing
  double gaussian_sigma = 3.8;    // saliency map smoothing
  int contrast_window = 3;        // local RMS contrast window
  double saliency_prescale = 1.0; // resize factor applied before saliency
  LumaWeights luma = kBt601Luma;  // RGB -> gray weights used by the loaders

  // Throws kInvalidConfig naming the offending field.
  void validate() const;

  friend bool operator==(const MetricConfig&, const MetricConfig&) = default;
};

nlohmann::json to_json(const MetricConfig& cfg);

// Overlays the keys present in `j` onto `base`; unknown keys are rejected.
MetricConfig merge_config(MetricConfig base, const nlohmann::json& j);

MetricConfig load_config(const std::filesystem::path& path, MetricConfig base = {});

}  // namespace iqa

#endif  // IQA_CONFIG_HPP_

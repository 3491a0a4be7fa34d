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

#include "iqa/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "iqa/error.hpp"

namespace iqa {
namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, "invalid metric config: " + what);
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) invalid(std::string(name) + " must be positive");
}

void require_odd(int v, const char* name) {
  if (v < 1 || v % 2 == 0) invalid(std::string(name) + " must be an odd integer >= 1");
}

}  // namespace

void MetricConfig::validate() const {
  require_positive(c1, "c1");
  require_positive(c2, "c2");
  if (!(w1 >= 0.0) || !(w2 >= 0.0) || !std::isfinite(w1) || !std::isfinite(w2)) {
    invalid("w1 and w2 must be nonnegative");
  }
  if (w1 + w2 <= 0.0) invalid("w1 and w2 cannot both be zero");
  require_odd(mean_filter_n, "mean_filter_n");
  require_positive(gaussian_sigma, "gaussian_sigma");
  require_odd(contrast_window, "contrast_window");
  require_positive(saliency_prescale, "saliency_prescale");
  for (double w : luma) {
    if (!(w >= 0.0) || !std::isfinite(w)) invalid("luma weights must be nonnegative");
  }
}

nlohmann::json to_json(const MetricConfig& cfg) {
  return {
      {"c1", cfg.c1},
      {"c2", cfg.c2},
      {"w1", cfg.w1},
      {"w2", cfg.w2},
      {"mean_filter_n", cfg.mean_filter_n},
      {"gaussian_sigma", cfg.gaussian_sigma},
      {"contrast_window", cfg.contrast_window},
      {"saliency_prescale", cfg.saliency_prescale},
      {"luma", cfg.luma},
  };
}

MetricConfig merge_config(MetricConfig base, const nlohmann::json& j) {
  if (!j.is_object()) invalid("expected a JSON object");
  static const std::set<std::string> kKeys = {
      "c1", "c2", "w1", "w2", "mean_filter_n", "gaussian_sigma",
      "contrast_window", "saliency_prescale", "luma"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) invalid("unknown key '" + key + "'");
  }
  try {
    if (j.contains("c1")) base.c1 = j.at("c1").get<double>();
    if (j.contains("c2")) base.c2 = j.at("c2").get<double>();
    if (j.contains("w1")) base.w1 = j.at("w1").get<double>();
    if (j.contains("w2")) base.w2 = j.at("w2").get<double>();
    if (j.contains("mean_filter_n")) base.mean_filter_n = j.at("mean_filter_n").get<int>();
    if (j.contains("gaussian_sigma")) base.gaussian_sigma = j.at("gaussian_sigma").get<double>();
    if (j.contains("contrast_window")) base.contrast_window = j.at("contrast_window").get<int>();
    if (j.contains("saliency_prescale")) {
      base.saliency_prescale = j.at("saliency_prescale").get<double>();
    }
    if (j.contains("luma")) base.luma = j.at("luma").get<LumaWeights>();
  } catch (const nlohmann::json::exception& e) {
    invalid(e.what());
  }
  base.validate();
  return base;
}

MetricConfig load_config(const std::filesystem::path& path, MetricConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  return merge_config(base, j);
}

}  // namespace iqa

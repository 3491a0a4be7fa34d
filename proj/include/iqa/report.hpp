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

#ifndef IQA_REPORT_HPP_
#define IQA_REPORT_HPP_

#include <ostream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "iqa/config.hpp"
#include "iqa/dataset.hpp"
#include "iqa/eval.hpp"

namespace iqa {

// report.json: overall, per_database, per_distortion, weighted_average,
// failures, config_used. Non-finite numbers are written as null.
nlohmann::json report_json(const EvaluationRun& run, const MetricConfig& cfg);

nlohmann::json to_json(const CorrelationReport& report);
nlohmann::json to_json(const GroupResult& group);

// scores.csv: distorted,reference,database,distortion,raw_score,mapped_score,subjective
void write_scores_csv(std::ostream& out, const EvaluationRun& run);

// Per-record plot data: raw_score,mapped_score,subjective
void write_plot_points_csv(std::ostream& out, const EvaluationRun& run);

// `count` evenly spaced (raw, mapped) samples over [lo, hi].
std::vector<std::pair<double, double>> sample_logistic(const LogisticParams& params, double lo,
                                                       double hi, int count = 200);

void write_curve_csv(std::ostream& out, const std::vector<std::pair<double, double>>& curve);

// Shortest round-trip decimal; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

}  // namespace iqa

#endif  // IQA_REPORT_HPP_

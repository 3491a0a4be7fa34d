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

#include "iqa/report.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace iqa {
namespace {

nlohmann::json number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

nlohmann::json to_json(const CorrelationReport& report) {
  return {
      {"plcc", number(report.plcc)},
      {"srocc", number(report.srocc)},
      {"krocc", number(report.krocc)},
      {"rmse", number(report.rmse)},
      {"logistic", {number(report.fitted.beta[0]), number(report.fitted.beta[1]),
                    number(report.fitted.beta[2]), number(report.fitted.beta[3]),
                    number(report.fitted.beta[4])}},
      {"fit_converged", report.fit_converged},
  };
}

nlohmann::json to_json(const GroupResult& group) {
  nlohmann::json j = {{"count", group.count}, {"status", std::string(to_string(group.status))}};
  if (!group.reason.empty()) j["reason"] = group.reason;
  if (group.report) j.update(to_json(*group.report));
  return j;
}

nlohmann::json report_json(const EvaluationRun& run, const MetricConfig& cfg) {
  nlohmann::json j;
  j["metric"] = std::string(to_string(run.metric));
  j["records"] = run.records.size();
  j["scored"] = run.records.size() - run.failures.size();
  j["overall"] = to_json(run.overall);

  j["per_database"] = nlohmann::json::object();
  for (const auto& [name, group] : run.per_database) j["per_database"][name] = to_json(group);

  j["per_distortion"] = nlohmann::json::object();
  for (const auto& [key, group] : run.per_distortion) {
    j["per_distortion"][key.first][key.second] = to_json(group);
  }

  if (run.weighted_average) {
    const WeightedSummary& w = *run.weighted_average;
    j["weighted_average"] = {{"plcc", number(w.plcc)},   {"srocc", number(w.srocc)},
                             {"krocc", number(w.krocc)}, {"rmse", number(w.rmse)},
                             {"images", w.images},       {"databases", w.groups}};
  } else {
    j["weighted_average"] = nullptr;
  }

  j["failures"] = nlohmann::json::array();
  for (const auto& f : run.failures) {
    j["failures"].push_back({{"index", f.index}, {"distorted", f.distorted}, {"message", f.message}});
  }
  j["config_used"] = to_json(cfg);
  return j;
}

void write_scores_csv(std::ostream& out, const EvaluationRun& run) {
  out << "distorted,reference,database,distortion,raw_score,mapped_score,subjective\n";
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    const ManifestRecord& rec = run.records[i];
    out << csv_field(rec.distorted_path.string()) << ',' << csv_field(rec.reference_path.string())
        << ',' << csv_field(rec.database) << ',' << csv_field(rec.distortion) << ',';
    if (run.scores[i]) {
      const double raw = run.scores[i]->value;
      out << format_number(raw) << ',' << format_number(run.overall_fit.params(raw));
    } else {
      out << ',';
    }
    out << ',' << format_number(rec.subjective) << '\n';
  }
}

void write_plot_points_csv(std::ostream& out, const EvaluationRun& run) {
  out << "raw_score,mapped_score,subjective\n";
  for (std::size_t i = 0; i < run.records.size(); ++i) {
    if (!run.scores[i]) continue;
    const double raw = run.scores[i]->value;
    out << format_number(raw) << ',' << format_number(run.overall_fit.params(raw)) << ','
        << format_number(run.records[i].subjective) << '\n';
  }
}

std::vector<std::pair<double, double>> sample_logistic(const LogisticParams& params, double lo,
                                                       double hi, int count) {
  std::vector<std::pair<double, double>> curve;
  curve.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : double(i) / double(count - 1);
    const double q = lo + t * (hi - lo);
    curve.emplace_back(q, params(q));
  }
  return curve;
}

void write_curve_csv(std::ostream& out, const std::vector<std::pair<double, double>>& curve) {
  out << "raw_score,mapped_score\n";
  for (const auto& [q, mapped] : curve) out << format_number(q) << ',' << format_number(mapped) << '\n';
}

}  // namespace iqa

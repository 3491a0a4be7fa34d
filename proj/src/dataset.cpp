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

#include "iqa/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <fstream>
#include <thread>

namespace iqa {
namespace {

// Splits one CSV line; double quotes delimit fields and "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += ch;
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": unterminated quoted field");
  }
  fields.push_back(std::move(field));
  return fields;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_subjective(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                            ": subjective score '" + text + "' is not a finite number");
  }
  return value;
}

}  // namespace

std::vector<ManifestRecord> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open manifest " + path.string());
  const std::filesystem::path base = path.parent_path();

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    for (auto& name : split_csv_line(line, line_no)) header.push_back(trim(name));
  }

  static constexpr const char* kColumns[] = {"distorted", "reference", "subjective", "distortion",
                                             "database"};
  std::size_t column[5];
  for (std::size_t k = 0; k < 5; ++k) {
    const auto it = std::find(header.begin(), header.end(), kColumns[k]);
    if (it == header.end()) {
      throw Error(ErrorCode::kMissingColumn,
                  path.string() + ": missing column '" + kColumns[k] + "'");
    }
    column[k] = static_cast<std::size_t>(it - header.begin());
  }

  const auto resolve = [&](const std::string& p) {
    std::filesystem::path candidate(p);
    return candidate.is_absolute() ? candidate : base / candidate;
  };

  std::vector<ManifestRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_csv_line(line, line_no);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(header.size()) + " fields, got " +
                                              std::to_string(fields.size()));
    }
    ManifestRecord record;
    record.distorted_path = resolve(trim(fields[column[0]]));
    record.reference_path = resolve(trim(fields[column[1]]));
    record.subjective = parse_subjective(trim(fields[column[2]]), line_no);
    record.distortion = trim(fields[column[3]]);
    record.database = trim(fields[column[4]]);
    if (trim(fields[column[0]]).empty() || trim(fields[column[1]]).empty()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": empty path");
    }
    if (record.distortion.empty()) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": empty distortion tag");
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::string_view to_string(GroupResult::Status status) {
  switch (status) {
    case GroupResult::Status::kOk: return "ok";
    case GroupResult::Status::kSkipped: return "skipped";
    case GroupResult::Status::kDegenerate: return "degenerate";
  }
  return "unknown";
}

GroupResult evaluate_group(std::vector<std::pair<double, double>> samples,
                           const FitOptions& options) {
  GroupResult group;
  group.count = samples.size();
  if (samples.size() < kMinGroupSize) {
    group.status = GroupResult::Status::kSkipped;
    group.reason = "fewer than " + std::to_string(kMinGroupSize) + " records";
    return group;
  }
  // Record order must not leak into the fit.
  std::stable_sort(samples.begin(), samples.end());
  ScoreSet set;
  set.objective.resize(static_cast<Eigen::Index>(samples.size()));
  set.subjective.resize(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    set.objective(Eigen::Index(i)) = samples[i].first;
    set.subjective(Eigen::Index(i)) = samples[i].second;
  }
  if (!set.objective.allFinite()) {
    group.status = GroupResult::Status::kDegenerate;
    group.reason = "non-finite objective scores";
    return group;
  }
  try {
    group.report = evaluate(set, options);
    group.status = GroupResult::Status::kOk;
  } catch (const Error& e) {
    group.status = GroupResult::Status::kDegenerate;
    group.reason = e.what();
  }
  return group;
}

std::optional<WeightedSummary> weighted_average(const std::map<std::string, GroupResult>& groups) {
  WeightedSummary sum;
  for (const auto& [name, group] : groups) {
    if (group.status != GroupResult::Status::kOk || !group.report) continue;
    const double w = double(group.count);
    sum.plcc += w * group.report->plcc;
    sum.srocc += w * group.report->srocc;
    sum.krocc += w * group.report->krocc;
    sum.rmse += w * group.report->rmse;
    sum.images += group.count;
    ++sum.groups;
  }
  if (sum.images == 0) return std::nullopt;
  const double total = double(sum.images);
  sum.plcc /= total;
  sum.srocc /= total;
  sum.krocc /= total;
  sum.rmse /= total;
  return sum;
}

ScoredRecords score_records(const std::vector<ManifestRecord>& records, MetricKind metric,
                            const MetricConfig& cfg, unsigned workers) {
  cfg.validate();
  const std::size_t n = records.size();
  ScoredRecords out;
  out.scores.assign(n, std::nullopt);
  std::vector<std::string> errors(n);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1)));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const ManifestRecord& rec = records[i];
      try {
        const ImagePair pair = ImagePair::load(rec.reference_path, rec.distorted_path, cfg.luma);
        out.scores[i] = score(pair, metric, cfg);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown error";
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!out.scores[i]) out.failures.push_back({i, records[i].distorted_path.string(), errors[i]});
  }
  return out;
}

EvaluationRun run_evaluation(std::vector<ManifestRecord> records, MetricKind metric,
                             const MetricConfig& cfg, const RunOptions& options) {
  EvaluationRun run;
  run.metric = metric;
  run.records = std::move(records);
  const std::size_t n = run.records.size();
  ScoredRecords scored = score_records(run.records, metric, cfg, options.workers);
  run.scores = std::move(scored.scores);
  run.failures = std::move(scored.failures);
  if (double(run.failures.size()) > kFailureBudget * double(n)) {
    throw Error(ErrorCode::kFailureBudgetExceeded,
                std::to_string(run.failures.size()) + " of " + std::to_string(n) +
                    " records failed; first: " + run.failures.front().message);
  }

  std::vector<std::pair<double, double>> overall;
  std::map<std::string, std::vector<std::pair<double, double>>> by_database;
  std::map<std::pair<std::string, std::string>, std::vector<std::pair<double, double>>> by_distortion;
  for (std::size_t i = 0; i < n; ++i) {
    if (!run.scores[i]) continue;
    const ManifestRecord& rec = run.records[i];
    const std::pair<double, double> sample{run.scores[i]->value, rec.subjective};
    overall.push_back(sample);
    by_database[rec.database].push_back(sample);
    by_distortion[{rec.database, rec.distortion}].push_back(sample);
  }

  run.overall = evaluate_group(overall, options.fit);
  for (auto& [key, samples] : by_database) {
    run.per_database[key] = evaluate_group(std::move(samples), options.fit);
  }
  for (auto& [key, samples] : by_distortion) {
    run.per_distortion[key] = evaluate_group(std::move(samples), options.fit);
  }
  run.weighted_average = weighted_average(run.per_database);

  if (run.overall.report) {
    run.overall_fit.params = run.overall.report->fitted;
    run.overall_fit.converged = run.overall.report->fit_converged;
  } else {
    double mean_s = 0.0;
    for (const auto& sample : overall) mean_s += sample.second;
    if (!overall.empty()) mean_s /= double(overall.size());
    run.overall_fit.params.beta = {0.0, 1.0, 0.0, 0.0, mean_s};
    run.overall_fit.degenerate = true;
  }
  return run;
}

}  // namespace iqa

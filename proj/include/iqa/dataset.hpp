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

#ifndef IQA_DATASET_HPP_
#define IQA_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iqa/config.hpp"
#include "iqa/eval.hpp"
#include "iqa/fusion.hpp"

namespace iqa {

// One row of a manifest CSV with header
//   distorted,reference,subjective,distortion,database
struct ManifestRecord {
  std::filesystem::path distorted_path;
  std::filesystem::path reference_path;
  double subjective = 0.0;
  std::string distortion;
  std::string database;
};

// Relative paths are resolved against the manifest's directory. Throws
// kFileNotFound, kMissingColumn, or kParseError naming the line.
std::vector<ManifestRecord> load_manifest(const std::filesystem::path& path);

// Groups smaller than this are not evaluated.
inline constexpr std::size_t kMinGroupSize = 4;

// A run fails outright when more than this fraction of records fail.
inline constexpr double kFailureBudget = 0.10;

struct GroupResult {
  enum class Status { kOk, kSkipped, kDegenerate };

  std::size_t count = 0;
  Status status = Status::kSkipped;
  std::optional<CorrelationReport> report;
  std::string reason;
};

std::string_view to_string(GroupResult::Status status);

struct RecordFailure {
  std::size_t index = 0;
  std::string distorted;
  std::string message;
};

struct WeightedSummary {
  double plcc = 0.0;
  double srocc = 0.0;
  double krocc = 0.0;
  double rmse = 0.0;
  std::size_t images = 0;
  std::size_t groups = 0;
};

struct EvaluationRun {
  MetricKind metric = MetricKind::kCeqi;
  std::vector<ManifestRecord> records;
  std::vector<std::optional<QualityScore>> scores;  // parallel to records
  std::vector<RecordFailure> failures;
  GroupResult overall;
  std::map<std::string, GroupResult> per_database;
  std::map<std::pair<std::string, std::string>, GroupResult> per_distortion;  // (database, distortion)
  std::optional<WeightedSummary> weighted_average;  // over evaluated databases
  LogisticFit overall_fit;  // maps raw scores for export; degenerate if not identifiable
};

struct RunOptions {
  unsigned workers = 1;  // 0 selects the hardware concurrency
  FitOptions fit;
};

struct ScoredRecords {
  std::vector<std::optional<QualityScore>> scores;  // parallel to the records
  std::vector<RecordFailure> failures;              // in record order
};

// Loads and scores each record on `workers` threads (0 selects the
// hardware concurrency). Never throws for per-record failures.
ScoredRecords score_records(const std::vector<ManifestRecord>& records, MetricKind metric,
                            const MetricConfig& cfg, unsigned workers = 1);

// Scores every record, then evaluates the overall set, each database and
// each (database, distortion) group. Record failures are collected; throws
// kFailureBudgetExceeded past kFailureBudget.
EvaluationRun run_evaluation(std::vector<ManifestRecord> records, MetricKind metric,
                             const MetricConfig& cfg, const RunOptions& options = {});

// Evaluates one group of already-scored samples; never throws for
// degenerate input, it reports it instead.
GroupResult evaluate_group(std::vector<std::pair<double, double>> samples,
                           const FitOptions& options = {});

// Count-weighted mean of the evaluated groups' correlations.
std::optional<WeightedSummary> weighted_average(const std::map<std::string, GroupResult>& groups);

}  // namespace iqa

#endif  // IQA_DATASET_HPP_

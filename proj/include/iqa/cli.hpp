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

#ifndef IQA_CLI_HPP_
#define IQA_CLI_HPP_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "iqa/config.hpp"
#include "iqa/fusion.hpp"

namespace iqa::cli {

// Stable process exit statuses.
enum ExitCode : int {
  kExitOk = 0,
  kExitEvaluationFailure = 1,
  kExitIo = 2,
  kExitDimension = 3,
  kExitUsage = 4,
};

enum class OutputFormat { kPlain, kJson, kCsv };

// Settings shared by all subcommands once flags and config files have been
// merged.
struct CliConfig {
  std::string subcommand;
  MetricKind metric = MetricKind::kCeqi;
  MetricConfig metric_config;
  OutputFormat format = OutputFormat::kPlain;
  unsigned workers = 1;
};

struct BenchSummary {
  int iterations = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double min_ms = 0.0;
  double images_per_second = 0.0;
};

inline constexpr int kBenchWarmup = 3;
inline constexpr int kBenchMinIterations = 10;

// Times `iterations` single-threaded scorings after kBenchWarmup untimed ones.
BenchSummary benchmark(const ImagePair& pair, MetricKind metric, const MetricConfig& cfg,
                       int iterations);

int exit_code_for(const std::exception& e);

int cmd_score(const std::filesystem::path& reference, const std::filesystem::path& distorted,
              const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Scores every manifest row, one CSV line per record.
int cmd_batch(const std::filesystem::path& manifest, const std::filesystem::path& output,
              const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Writes report.json and scores.csv into `out_dir`.
int cmd_evaluate(const std::filesystem::path& manifest, const std::filesystem::path& out_dir,
                 const CliConfig& cfg, std::ostream& out, std::ostream& err);

int cmd_bench(const std::filesystem::path& reference, const std::filesystem::path& distorted,
              int iterations, const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Writes plot_points.csv and, unless the manifest is empty, logistic_curve.csv.
int cmd_plot_data(const std::filesystem::path& manifest, const std::filesystem::path& out_dir,
                  const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iqa::cli

#endif  // IQA_CLI_HPP_

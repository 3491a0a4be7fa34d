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

#include "iqa/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>

#include <CLI11.hpp>

#include "iqa/dataset.hpp"
#include "iqa/report.hpp"

namespace iqa::cli {
namespace {

std::string fixed6(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

nlohmann::json json_number_or_text(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(fixed6(v));
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write " + path.string());
  return out;
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kFileNotFound, "cannot create " + dir.string() + ": " + ec.message());
}

// Runs `body`, turning exceptions into a message and an exit status.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

void print_group_summary(std::ostream& out, const std::string& label, const GroupResult& group) {
  out << label << ": n=" << group.count << ' ' << to_string(group.status);
  if (group.report) {
    out << " plcc=" << fixed6(group.report->plcc) << " srocc=" << fixed6(group.report->srocc)
        << " krocc=" << fixed6(group.report->krocc) << " rmse=" << fixed6(group.report->rmse);
  } else if (!group.reason.empty()) {
    out << " (" << group.reason << ')';
  }
  out << '\n';
}

}  // namespace

BenchSummary benchmark(const ImagePair& pair, MetricKind metric, const MetricConfig& cfg,
                       int iterations) {
  if (iterations < kBenchMinIterations) {
    throw Error(ErrorCode::kInvalidArgument,
                "bench needs at least " + std::to_string(kBenchMinIterations) + " iterations");
  }
  cfg.validate();
  volatile double sink = 0.0;
  for (int i = 0; i < kBenchWarmup; ++i) sink = sink + score(pair, metric, cfg).value;

  std::vector<double> ms;
  ms.reserve(static_cast<std::size_t>(iterations));
  for (int i = 0; i < iterations; ++i) {
    const auto start = std::chrono::steady_clock::now();
    sink = sink + score(pair, metric, cfg).value;
    const auto stop = std::chrono::steady_clock::now();
    ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }

  BenchSummary summary;
  summary.iterations = iterations;
  summary.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / double(ms.size());
  std::sort(ms.begin(), ms.end());
  const std::size_t mid = ms.size() / 2;
  summary.median_ms = ms.size() % 2 ? ms[mid] : 0.5 * (ms[mid - 1] + ms[mid]);
  summary.min_ms = ms.front();
  summary.images_per_second = 1000.0 / summary.mean_ms;
  return summary;
}

int exit_code_for(const std::exception& e) {
  if (const auto* error = dynamic_cast<const Error*>(&e)) {
    switch (error->code()) {
      case ErrorCode::kFileNotFound:
      case ErrorCode::kDecodeError:
      case ErrorCode::kParseError:
      case ErrorCode::kMissingColumn:
        return kExitIo;
      case ErrorCode::kDimensionMismatch:
      case ErrorCode::kDimensionTooSmall:
        return kExitDimension;
      case ErrorCode::kInvalidArgument:
      case ErrorCode::kInvalidConfig:
        return kExitUsage;
      default:
        return kExitEvaluationFailure;
    }
  }
  if (dynamic_cast<const std::filesystem::filesystem_error*>(&e)) return kExitIo;
  return kExitEvaluationFailure;
}

int cmd_score(const std::filesystem::path& reference, const std::filesystem::path& distorted,
              const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    cfg.metric_config.validate();
    const ImagePair pair = ImagePair::load(reference, distorted, cfg.metric_config.luma);
    const QualityScore result = score(pair, cfg.metric, cfg.metric_config);
    switch (cfg.format) {
      case OutputFormat::kPlain:
        out << fixed6(result.value) << '\n';
        break;
      case OutputFormat::kCsv:
        out << "metric,value\n" << to_string(result.kind) << ',' << fixed6(result.value) << '\n';
        break;
      case OutputFormat::kJson:
        out << nlohmann::json{{"metric", std::string(to_string(result.kind))},
                              {"value", json_number_or_text(result.value)}}
                   .dump()
            << '\n';
        break;
    }
    return int(kExitOk);
  });
}

int cmd_batch(const std::filesystem::path& manifest, const std::filesystem::path& output,
              const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto records = load_manifest(manifest);
    const ScoredRecords scored = score_records(records, cfg.metric, cfg.metric_config, cfg.workers);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!output.empty() && output != "-") {
      file = open_output(output);
      sink = &file;
    }
    std::size_t failure = 0;
    if (cfg.format == OutputFormat::kJson) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t i = 0; i < records.size(); ++i) {
        nlohmann::json row = {{"distorted", records[i].distorted_path.string()},
                              {"reference", records[i].reference_path.string()},
                              {"subjective", records[i].subjective}};
        if (scored.scores[i]) {
          row["score"] = json_number_or_text(scored.scores[i]->value);
        } else {
          row["error"] = scored.failures[failure++].message;
        }
        rows.push_back(row);
      }
      *sink << nlohmann::json{{"metric", std::string(to_string(cfg.metric))}, {"records", rows}}.dump(2)
            << '\n';
    } else {
      *sink << "distorted,reference,database,distortion,score,subjective,error\n";
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        *sink << rec.distorted_path.string() << ',' << rec.reference_path.string() << ','
              << rec.database << ',' << rec.distortion << ','
              << (scored.scores[i] ? format_number(scored.scores[i]->value) : "") << ','
              << format_number(rec.subjective) << ',';
        if (!scored.scores[i]) {
          std::string message = scored.failures[failure++].message;
          std::replace(message.begin(), message.end(), ',', ';');
          *sink << message;
        }
        *sink << '\n';
      }
    }
    if (double(scored.failures.size()) > kFailureBudget * double(records.size())) {
      err << "error: " << scored.failures.size() << " of " << records.size()
          << " records failed\n";
      return int(kExitEvaluationFailure);
    }
    return int(kExitOk);
  });
}

int cmd_evaluate(const std::filesystem::path& manifest, const std::filesystem::path& out_dir,
                 const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const EvaluationRun run = run_evaluation(load_manifest(manifest), cfg.metric,
                                             cfg.metric_config, RunOptions{cfg.workers, {}});
    ensure_directory(out_dir);
    {
      auto file = open_output(out_dir / "report.json");
      file << report_json(run, cfg.metric_config).dump(2) << '\n';
    }
    {
      auto file = open_output(out_dir / "scores.csv");
      write_scores_csv(file, run);
    }
    for (const auto& f : run.failures) {
      err << "warning: record " << f.index << " (" << f.distorted << "): " << f.message << '\n';
    }
    print_group_summary(out, "overall", run.overall);
    for (const auto& [name, group] : run.per_database) print_group_summary(out, name, group);
    if (run.weighted_average) {
      const auto& w = *run.weighted_average;
      out << "weighted: plcc=" << fixed6(w.plcc) << " srocc=" << fixed6(w.srocc)
          << " krocc=" << fixed6(w.krocc) << " rmse=" << fixed6(w.rmse) << '\n';
    }
    return int(kExitOk);
  });
}

int cmd_bench(const std::filesystem::path& reference, const std::filesystem::path& distorted,
              int iterations, const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (iterations < kBenchMinIterations) {
    err << "error: --iterations must be at least " << kBenchMinIterations << '\n';
    return kExitUsage;
  }
  return guarded(err, [&] {
    const ImagePair pair = ImagePair::load(reference, distorted, cfg.metric_config.luma);
    const BenchSummary s = benchmark(pair, cfg.metric, cfg.metric_config, iterations);
    if (cfg.format == OutputFormat::kJson) {
      out << nlohmann::json{{"metric", std::string(to_string(cfg.metric))},
                            {"height", pair.reference().rows()},
                            {"width", pair.reference().cols()},
                            {"iterations", s.iterations},
                            {"warmup", kBenchWarmup},
                            {"mean_ms", s.mean_ms},
                            {"median_ms", s.median_ms},
                            {"min_ms", s.min_ms},
                            {"images_per_second", s.images_per_second}}
                 .dump(2)
          << '\n';
    } else {
      out << "metric: " << to_string(cfg.metric) << '\n'
          << "image: " << shape_string(pair.reference()) << '\n'
          << "iterations: " << s.iterations << " (+" << kBenchWarmup << " warmup)\n"
          << "mean_ms: " << fixed6(s.mean_ms) << '\n'
          << "median_ms: " << fixed6(s.median_ms) << '\n'
          << "min_ms: " << fixed6(s.min_ms) << '\n'
          << "images_per_second: " << fixed6(s.images_per_second) << '\n';
    }
    return int(kExitOk);
  });
}

int cmd_plot_data(const std::filesystem::path& manifest, const std::filesystem::path& out_dir,
                  const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const EvaluationRun run = run_evaluation(load_manifest(manifest), cfg.metric,
                                             cfg.metric_config, RunOptions{cfg.workers, {}});
    ensure_directory(out_dir);
    {
      auto file = open_output(out_dir / "plot_points.csv");
      write_plot_points_csv(file, run);
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : run.scores) {
      if (s && std::isfinite(s->value)) {
        lo = std::min(lo, s->value);
        hi = std::max(hi, s->value);
      }
    }
    const auto curve_path = out_dir / "logistic_curve.csv";
    if (lo > hi) {
      std::filesystem::remove(curve_path);
      err << "warning: no scored records, logistic curve not written\n";
    } else {
      auto file = open_output(curve_path);
      write_curve_csv(file, sample_logistic(run.overall_fit.params, lo, hi, 200));
    }
    out << "wrote " << (out_dir / "plot_points.csv").string() << '\n';
    return int(kExitOk);
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Center-emphasized full-reference image quality toolkit", "ceqi"};
  app.require_subcommand(1);

  CliConfig cli;
  std::string metric_name = "ceqi";
  std::string format_name = "plain";
  std::string config_path;
  std::optional<double> c1, c2, w1, w2, sigma, prescale;
  std::optional<int> mean_filter, contrast_window;
  std::string reference, distorted, manifest, output, out_dir = ".";
  int iterations = 50;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-m,--metric", metric_name, "Metric: ceqi, qs or psnr")
        ->check(CLI::IsMember({"ceqi", "qs", "psnr"}, CLI::ignore_case));
    sub->add_option("-f,--format", format_name, "Output format: plain, json or csv")
        ->check(CLI::IsMember({"plain", "json", "csv"}));
    sub->add_option("--config", config_path, "JSON file with metric constants");
    sub->add_option("--c1", c1, "Saliency similarity stabilizer");
    sub->add_option("--c2", c2, "Contrast similarity stabilizer");
    sub->add_option("--w1", w1, "Saliency channel weight");
    sub->add_option("--w2", w2, "Contrast channel weight");
    sub->add_option("--mean-filter", mean_filter, "Log-spectrum mean filter size (odd)");
    sub->add_option("--sigma", sigma, "Saliency Gaussian sigma");
    sub->add_option("--contrast-window", contrast_window, "Local contrast window (odd)");
    sub->add_option("--prescale", prescale, "Resize factor applied before saliency");
  };
  const auto add_workers = [&](CLI::App* sub) {
    sub->add_option("-j,--workers", cli.workers, "Worker threads (0 = all cores)");
  };

  auto* score_cmd = app.add_subcommand("score", "Score one reference/distorted pair");
  score_cmd->add_option("reference", reference)->required();
  score_cmd->add_option("distorted", distorted)->required();
  add_common(score_cmd);

  auto* batch_cmd = app.add_subcommand("batch", "Score every pair of a manifest");
  batch_cmd->add_option("manifest", manifest)->required();
  batch_cmd->add_option("-o,--output", output, "Output file (default stdout)");
  add_common(batch_cmd);
  add_workers(batch_cmd);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Correlate scores with subjective ratings");
  evaluate_cmd->add_option("manifest", manifest)->required();
  evaluate_cmd->add_option("-o,--out-dir", out_dir, "Directory for report.json and scores.csv");
  add_common(evaluate_cmd);
  add_workers(evaluate_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Time single-threaded scoring of one pair");
  bench_cmd->add_option("reference", reference)->required();
  bench_cmd->add_option("distorted", distorted)->required();
  bench_cmd->add_option("-n,--iterations", iterations, "Timed iterations (>= 10)");
  add_common(bench_cmd);

  auto* plot_cmd = app.add_subcommand("plot-data", "Export scatter and fitted-curve data");
  plot_cmd->add_option("manifest", manifest)->required();
  plot_cmd->add_option("-o,--out-dir", out_dir, "Directory for the CSV files");
  add_common(plot_cmd);
  add_workers(plot_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands()) err << sub->help();
    return kExitUsage;
  }

  cli.subcommand = app.get_subcommands().front()->get_name();
  try {
    cli.metric = parse_metric_kind(metric_name);
    cli.format = format_name == "json"  ? OutputFormat::kJson
                 : format_name == "csv" ? OutputFormat::kCsv
                                        : OutputFormat::kPlain;
    MetricConfig mc;
    if (!config_path.empty()) mc = load_config(config_path, mc);
    if (c1) mc.c1 = *c1;
    if (c2) mc.c2 = *c2;
    if (w1) mc.w1 = *w1;
    if (w2) mc.w2 = *w2;
    if (mean_filter) mc.mean_filter_n = *mean_filter;
    if (sigma) mc.gaussian_sigma = *sigma;
    if (contrast_window) mc.contrast_window = *contrast_window;
    if (prescale) mc.saliency_prescale = *prescale;
    mc.validate();
    cli.metric_config = mc;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  if (cli.subcommand == "score") return cmd_score(reference, distorted, cli, out, err);
  if (cli.subcommand == "batch") return cmd_batch(manifest, output, cli, out, err);
  if (cli.subcommand == "evaluate") return cmd_evaluate(manifest, out_dir, cli, out, err);
  if (cli.subcommand == "bench") return cmd_bench(reference, distorted, iterations, cli, out, err);
  return cmd_plot_data(manifest, out_dir, cli, out, err);
}

}  // namespace iqa::cli

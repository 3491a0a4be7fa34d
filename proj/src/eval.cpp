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

#include "iqa/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "iqa/error.hpp"

namespace iqa {
namespace {

void require_lengths(VectorRef o, VectorRef s, Eigen::Index min_length) {
  if (o.size() != s.size()) {
    throw Error(ErrorCode::kLengthMismatch, "score vectors differ in length: " +
                                                std::to_string(o.size()) + " vs " +
                                                std::to_string(s.size()));
  }
  if (o.size() < min_length) {
    throw Error(ErrorCode::kInsufficientData,
                "need at least " + std::to_string(min_length) + " scores, got " +
                    std::to_string(o.size()));
  }
}

bool is_constant(VectorRef v) { return v.size() == 0 || v.maxCoeff() == v.minCoeff(); }

double population_std(VectorRef v) {
  return std::sqrt((v.array() - v.mean()).square().mean());
}

// Sigmoid term 1 / (1 + exp(t)); saturates cleanly for large |t|.
double falling_sigmoid(double t) { return 1.0 / (1.0 + std::exp(t)); }

Eigen::VectorXd residuals(VectorRef o, VectorRef s, const LogisticParams& p) {
  return logistic_map(o, p) - s;
}

Eigen::Matrix<double, Eigen::Dynamic, 5> jacobian(VectorRef o, const LogisticParams& p) {
  const auto& b = p.beta;
  Eigen::Matrix<double, Eigen::Dynamic, 5> j(o.size(), 5);
  for (Eigen::Index i = 0; i < o.size(); ++i) {
    const double sig = falling_sigmoid(b[1] * (o(i) - b[2]));
    const double slope = sig * (1.0 - sig);  // d(-sig)/dt
    j(i, 0) = 0.5 - sig;
    j(i, 1) = b[0] * slope * (o(i) - b[2]);
    j(i, 2) = -b[0] * slope * b[1];
    j(i, 3) = o(i);
    j(i, 4) = 1.0;
  }
  return j;
}

// Merge sort that counts strict inversions (a[i] > a[j], i < j).
std::int64_t count_inversions(std::vector<double>& a, std::vector<double>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t n = count_inversions(a, scratch, lo, mid) + count_inversions(a, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      n += static_cast<std::int64_t>(mid - i);
      scratch[k++] = a[j++];
    } else {
      scratch[k++] = a[i++];
    }
  }
  while (i < mid) scratch[k++] = a[i++];
  while (j < hi) scratch[k++] = a[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, a.begin() + lo);
  return n;
}

// Number of tied pairs in an already sorted sequence, runs judged by `same`.
template <typename Same>
std::int64_t tied_pairs(std::size_t n, Same same) {
  std::int64_t pairs = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && same(i - 1, i)) {
      ++run;
    } else {
      pairs += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
      run = 1;
    }
  }
  return pairs;
}

}  // namespace

double LogisticParams::operator()(double q) const {
  const auto& b = beta;
  return b[0] * (0.5 - falling_sigmoid(b[1] * (q - b[2]))) + b[3] * q + b[4];
}

Eigen::VectorXd logistic_map(VectorRef q, const LogisticParams& params) {
  return q.unaryExpr([&](double v) { return params(v); });
}

namespace {

// Levenberg-Marquardt with Marquardt's diagonal scaling, from `start`.
LogisticFit levenberg_marquardt(VectorRef objective, VectorRef subjective,
                                const LogisticParams& start, const FitOptions& options) {
  LogisticFit fit;
  fit.params = start;
  using Mat5 = Eigen::Matrix<double, 5, 5>;
  using Vec5 = Eigen::Matrix<double, 5, 1>;
  double lambda = 1e-3;
  Eigen::VectorXd r = residuals(objective, subjective, fit.params);
  double ssr = r.squaredNorm();

  for (fit.iterations = 0; fit.iterations < options.max_iterations; ++fit.iterations) {
    if (ssr == 0.0) {
      fit.converged = true;
      break;
    }
    const auto j = jacobian(objective, fit.params);
    const Mat5 jtj = j.transpose() * j;
    const Vec5 grad = j.transpose() * r;
    const Vec5 scale = jtj.diagonal().cwiseMax(1e-12 * std::max(1.0, jtj.diagonal().maxCoeff()));

    bool accepted = false;
    double next_ssr = ssr;
    while (lambda < 1e16) {
      Mat5 damped = jtj;
      damped.diagonal() += lambda * scale;
      const Vec5 step = damped.ldlt().solve(-grad);
      LogisticParams trial = fit.params;
      for (int k = 0; k < 5; ++k) trial.beta[k] += step(k);
      const Eigen::VectorXd trial_r = residuals(objective, subjective, trial);
      const double trial_ssr = trial_r.squaredNorm();
      if (std::isfinite(trial_ssr) && trial_ssr < ssr) {
        fit.params = trial;
        r = trial_r;
        next_ssr = trial_ssr;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // No damping level improves the residual: stationary to precision.
      fit.converged = true;
      break;
    }
    const double change = (ssr - next_ssr) / ssr;
    ssr = next_ssr;
    if (change < options.relative_tolerance) {
      fit.converged = true;
      ++fit.iterations;
      break;
    }
  }
  fit.residual_ss = ssr;
  return fit;
}

}  // namespace

LogisticFit fit_logistic(VectorRef objective, VectorRef subjective, const FitOptions& options) {
  require_lengths(objective, subjective, 5);
  if (!objective.allFinite() || !subjective.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, "scores must be finite");
  }

  const double std_o = population_std(objective);
  LogisticParams start;
  start.beta = {subjective.maxCoeff() - subjective.minCoeff(), std_o > 0.0 ? 1.0 / std_o : 1.0,
                objective.mean(), 0.0, subjective.mean()};

  if (is_constant(objective)) {
    // Only the intercept is identifiable.
    LogisticFit fit;
    fit.params = start;
    fit.params.beta[0] = 0.0;
    fit.degenerate = true;
    fit.residual_ss = residuals(objective, subjective, fit.params).squaredNorm();
    return fit;
  }

  LogisticFit fit = levenberg_marquardt(objective, subjective, start, options);
  // Nearly linear data leaves the sigmoid start in a long flat valley; a
  // second start on the least-squares line reaches it directly.
  const Eigen::ArrayXd dev_o = objective.array() - objective.mean();
  const double slope = (dev_o * (subjective.array() - subjective.mean())).sum() / dev_o.square().sum();
  LogisticParams affine = start;
  affine.beta[0] = 0.0;
  affine.beta[3] = slope;
  affine.beta[4] = subjective.mean() - slope * objective.mean();
  const LogisticFit alt = levenberg_marquardt(objective, subjective, affine, options);
  if (alt.residual_ss < fit.residual_ss) fit = alt;
  return fit;
}

double plcc(VectorRef o, VectorRef s) {
  require_lengths(o, s, 2);
  if (is_constant(o) || is_constant(s)) {
    throw Error(ErrorCode::kConstantVector, "correlation undefined for a constant vector");
  }
  const Eigen::ArrayXd dev_o = o.array() - o.mean();
  const Eigen::ArrayXd dev_s = s.array() - s.mean();
  const double r =
      (dev_o * dev_s).sum() / (std::sqrt(dev_o.square().sum()) * std::sqrt(dev_s.square().sum()));
  return std::clamp(r, -1.0, 1.0);
}

Eigen::VectorXd fractional_rank(VectorRef v) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(v.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return v(a) < v(b); });
  Eigen::VectorXd ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v(order[j + 1]) == v(order[i])) ++j;
    const double average = 0.5 * double(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks(order[k]) = average;
    i = j + 1;
  }
  return ranks;
}

double srocc(VectorRef o, VectorRef s) {
  require_lengths(o, s, 2);
  return plcc(fractional_rank(o), fractional_rank(s));
}

double krocc(VectorRef o, VectorRef s) {
  require_lengths(o, s, 2);
  const std::size_t m = static_cast<std::size_t>(o.size());

  // Knight's method: sort by (o, s), count the discordant pairs as
  // inversions of s, and correct for ties.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return o(a) < o(b) || (o(a) == o(b) && s(a) < s(b));
  });

  const std::int64_t all_pairs = static_cast<std::int64_t>(m) * static_cast<std::int64_t>(m - 1) / 2;
  const std::int64_t tied_o =
      tied_pairs(m, [&](std::size_t a, std::size_t b) { return o(order[a]) == o(order[b]); });
  const std::int64_t tied_both = tied_pairs(m, [&](std::size_t a, std::size_t b) {
    return o(order[a]) == o(order[b]) && s(order[a]) == s(order[b]);
  });

  std::vector<double> seq(m), scratch(m);
  for (std::size_t i = 0; i < m; ++i) seq[i] = s(order[i]);
  const std::int64_t discordant = count_inversions(seq, scratch, 0, m);
  const std::int64_t tied_s = tied_pairs(m, [&](std::size_t a, std::size_t b) { return seq[a] == seq[b]; });

  const std::int64_t net = all_pairs - tied_o - tied_s + tied_both - 2 * discordant;
  return double(net) / double(all_pairs);
}

double rmse(VectorRef o, VectorRef s) {
  require_lengths(o, s, 1);
  return std::sqrt((o - s).squaredNorm() / double(o.size()));
}

void ScoreSet::validate() const {
  require_lengths(objective, subjective, 4);
  if (!objective.allFinite() || !subjective.allFinite()) {
    throw Error(ErrorCode::kNonFiniteValue, "scores must be finite");
  }
}

CorrelationReport evaluate(const ScoreSet& scores, const FitOptions& options) {
  scores.validate();
  const Eigen::VectorXd& o = scores.objective;
  const Eigen::VectorXd& s = scores.subjective;
  if (is_constant(o)) {
    throw Error(ErrorCode::kDegenerateInput, "objective scores are constant");
  }
  if (is_constant(s)) {
    throw Error(ErrorCode::kDegenerateInput, "subjective scores are constant");
  }

  CorrelationReport report;
  if (o.size() < 5) {
    // Affine least squares: s ~ b4 * o + b5.
    const Eigen::ArrayXd dev_o = o.array() - o.mean();
    const double slope = (dev_o * (s.array() - s.mean())).sum() / dev_o.square().sum();
    report.fitted.beta = {0.0, 1.0, 0.0, slope, s.mean() - slope * o.mean()};
    report.fit_converged = true;
  } else {
    const LogisticFit fit = fit_logistic(o, s, options);
    report.fitted = fit.params;
    report.fit_converged = fit.converged;
  }

  const Eigen::VectorXd mapped = logistic_map(o, report.fitted);
  report.plcc = plcc(mapped, s);
  report.rmse = rmse(mapped, s);
  report.srocc = srocc(o, s);
  report.krocc = krocc(o, s);
  return report;
}

}  // namespace iqa

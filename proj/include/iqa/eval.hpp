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

#ifndef IQA_EVAL_HPP_
#define IQA_EVAL_HPP_

#include <array>

#include <Eigen/Core>

namespace iqa {

using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

// Five-parameter logistic with a linear term:
//   q' = b1 * (1/2 - 1 / (1 + exp(b2 * (q - b3)))) + b4 * q + b5
struct LogisticParams {
  std::array<double, 5> beta{0.0, 1.0, 0.0, 1.0, 0.0};

  double operator()(double q) const;
};

Eigen::VectorXd logistic_map(VectorRef q, const LogisticParams& params);

struct LogisticFit {
  LogisticParams params;
  bool converged = false;   // relative residual change fell below tolerance
  bool degenerate = false;  // constant objective: only the intercept was fitted
  int iterations = 0;
  double residual_ss = 0.0;
};

struct FitOptions {
  double relative_tolerance = 1e-10;
  int max_iterations = 500;
};

// Damped least-squares (Levenberg-Marquardt) fit of `subjective` against
// the logistic of `objective`. Initial point: b1 = range(s), b2 = 1/std(o),
// b3 = mean(o), b4 = 0, b5 = mean(s); a second start on the least-squares
// line is also tried and the smaller residual kept. Needs at least five
// samples.
LogisticFit fit_logistic(VectorRef objective, VectorRef subjective, const FitOptions& options = {});

double plcc(VectorRef o, VectorRef s);

// Fractional (average) ranks starting at 1.
Eigen::VectorXd fractional_rank(VectorRef v);

double srocc(VectorRef o, VectorRef s);

// Kendall tau-a: (concordant - discordant) / (m (m - 1) / 2); tied pairs
// count as neither.
double krocc(VectorRef o, VectorRef s);

double rmse(VectorRef o, VectorRef s);

// Paired objective/subjective scores, m >= 4.
struct ScoreSet {
  Eigen::VectorXd objective;
  Eigen::VectorXd subjective;

  void validate() const;
};

struct CorrelationReport {
  double plcc = 0.0;
  double srocc = 0.0;
  double krocc = 0.0;
  double rmse = 0.0;
  LogisticParams fitted;
  bool fit_converged = false;
};

// Fits the logistic on the raw scores. PLCC and RMSE use the mapped
// scores, SROCC and KROCC the raw ones. With exactly four samples the
// logistic is underdetermined and an affine least-squares map is used
// instead. Throws kDegenerateInput when either side is constant.
CorrelationReport evaluate(const ScoreSet& scores, const FitOptions& options = {});

}  // namespace iqa

#endif  // IQA_EVAL_HPP_

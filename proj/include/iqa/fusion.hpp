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

#ifndef IQA_FUSION_HPP_
#define IQA_FUSION_HPP_

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "iqa/config.hpp"
#include "iqa/contrast.hpp"
#include "iqa/raster.hpp"
#include "iqa/saliency.hpp"

namespace iqa {

// Cellwise similarity in (0, 1].
template <typename Scalar>
using SimilarityMap = Grid<Scalar>;

// Middle block of the 3x3 split. Spans are 0-based and half-open:
// rows [row_min, row_max), cols [col_min, col_max).
struct CenterRegion {
  Eigen::Index row_min = 0;
  Eigen::Index col_min = 0;
  Eigen::Index row_max = 0;
  Eigen::Index col_max = 0;
  Eigen::Index h_mid = 0;
  Eigen::Index w_mid = 0;

  Eigen::Index rows() const { return row_max - row_min; }
  Eigen::Index cols() const { return col_max - col_min; }

  template <typename Derived>
  auto block_of(Eigen::ArrayBase<Derived>& g) const {
    return g.derived().block(row_min, col_min, rows(), cols());
  }
  template <typename Derived>
  auto block_of(const Eigen::ArrayBase<Derived>& g) const {
    return g.derived().block(row_min, col_min, rows(), cols());
  }

  bool fits(Eigen::Index height, Eigen::Index width) const {
    return row_min >= 0 && col_min >= 0 && row_max <= height && col_max <= width &&
           rows() > 0 && cols() > 0;
  }

  friend bool operator==(const CenterRegion&, const CenterRegion&) = default;
};

enum class MetricKind { kCeqi, kQs, kPsnr };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view name);

struct QualityScore {
  double value = 0.0;
  MetricKind kind = MetricKind::kCeqi;
};

// (2ab + c) / (a^2 + b^2 + c), cellwise.
template <typename DerivedA, typename DerivedB>
SimilarityMap<typename DerivedA::Scalar> similarity_map(const Eigen::ArrayBase<DerivedA>& a,
                                                        const Eigen::ArrayBase<DerivedB>& b,
                                                        double stabilizer) {
  using Scalar = typename DerivedA::Scalar;
  require_same_shape(a, b);
  if (!(stabilizer > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "similarity stabilizer must be positive");
  }
  const Scalar c = static_cast<Scalar>(stabilizer);
  return ((Scalar(2) * a * b + c) / (a.square() + b.square() + c)).min(Scalar(1));
}

CenterRegion center_region(Eigen::Index height, Eigen::Index width);

// Multiplies the center block of `vss` by `vss_mid` (the similarity of the
// cropped center images).
template <typename DerivedA, typename DerivedB>
SimilarityMap<typename DerivedA::Scalar> emphasize_center_vss(
    const Eigen::ArrayBase<DerivedA>& vss, const Eigen::ArrayBase<DerivedB>& vss_mid,
    const CenterRegion& region) {
  if (!region.fits(vss.rows(), vss.cols())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "center region does not fit a " + shape_string(vss) + " map");
  }
  require_same_shape(region.rows(), region.cols(), vss_mid.rows(), vss_mid.cols());
  SimilarityMap<typename DerivedA::Scalar> out = vss;
  region.block_of(out) *= vss_mid.derived();
  return out;
}

// Squares the center block of `cs`.
template <typename Derived>
SimilarityMap<typename Derived::Scalar> emphasize_center_cs(const Eigen::ArrayBase<Derived>& cs,
                                                            const CenterRegion& region) {
  if (!region.fits(cs.rows(), cs.cols())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "center region does not fit a " + shape_string(cs) + " map");
  }
  SimilarityMap<typename Derived::Scalar> out = cs;
  region.block_of(out) = region.block_of(out).square().eval();
  return out;
}

// Population standard deviation (divide by M), two-pass.
template <typename Derived>
typename Derived::Scalar sd_pool(const Eigen::ArrayBase<Derived>& map) {
  using Scalar = typename Derived::Scalar;
  if (map.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot pool an empty map");
  }
  const Scalar n = static_cast<Scalar>(map.size());
  const Scalar mean = map.sum() / n;
  return std::sqrt((map - mean).square().sum() / n);
}

// Intermediate maps of one CEQI evaluation.
template <typename Scalar>
struct CeqiMaps {
  SimilarityMap<Scalar> vss;
  SimilarityMap<Scalar> vss_mid;
  SimilarityMap<Scalar> cs;
  SimilarityMap<Scalar> vss_final;
  SimilarityMap<Scalar> cs_final;
  CenterRegion region;
};

template <typename DerivedR, typename DerivedD>
CeqiMaps<typename DerivedR::Scalar> ceqi_maps(const Eigen::ArrayBase<DerivedR>& reference,
                                              const Eigen::ArrayBase<DerivedD>& distorted,
                                              const MetricConfig& cfg) {
  using Scalar = typename DerivedR::Scalar;
  cfg.validate();
  require_same_shape(reference, distorted);
  require_metric_size(reference.rows(), reference.cols());

  CeqiMaps<Scalar> maps;
  maps.region = center_region(reference.rows(), reference.cols());

  maps.vss = similarity_map(spectral_residual_saliency(reference, cfg),
                            spectral_residual_saliency(distorted, cfg), cfg.c1);

  // Saliency is global, so the center is cropped first and re-analysed.
  const Grid<Scalar> ref_mid = maps.region.block_of(reference);
  const Grid<Scalar> dist_mid = maps.region.block_of(distorted);
  maps.vss_mid = similarity_map(spectral_residual_saliency(ref_mid, cfg),
                                spectral_residual_saliency(dist_mid, cfg), cfg.c1);

  maps.cs = similarity_map(contrast_map(reference, cfg), contrast_map(distorted, cfg), cfg.c2);

  maps.vss_final = emphasize_center_vss(maps.vss, maps.vss_mid, maps.region);
  maps.cs_final = emphasize_center_cs(maps.cs, maps.region);
  return maps;
}

template <typename Scalar>
Scalar weighted_deviation(const SimilarityMap<Scalar>& saliency_sim,
                          const SimilarityMap<Scalar>& contrast_sim, const MetricConfig& cfg) {
  const Scalar w1 = static_cast<Scalar>(cfg.w1);
  const Scalar w2 = static_cast<Scalar>(cfg.w2);
  return (w1 * sd_pool(saliency_sim) + w2 * sd_pool(contrast_sim)) / (w1 + w2);
}

// Center-emphasized quality index; 0 for identical images, larger means
// more visible distortion.
template <typename DerivedR, typename DerivedD>
typename DerivedR::Scalar ceqi(const Eigen::ArrayBase<DerivedR>& reference,
                               const Eigen::ArrayBase<DerivedD>& distorted,
                               const MetricConfig& cfg) {
  const auto maps = ceqi_maps(reference, distorted, cfg);
  return weighted_deviation(maps.vss_final, maps.cs_final, cfg);
}

// The same score without center emphasis.
template <typename DerivedR, typename DerivedD>
typename DerivedR::Scalar qs_baseline(const Eigen::ArrayBase<DerivedR>& reference,
                                      const Eigen::ArrayBase<DerivedD>& distorted,
                                      const MetricConfig& cfg) {
  using Scalar = typename DerivedR::Scalar;
  cfg.validate();
  require_same_shape(reference, distorted);
  require_metric_size(reference.rows(), reference.cols());
  const SimilarityMap<Scalar> vss =
      similarity_map(spectral_residual_saliency(reference, cfg),
                     spectral_residual_saliency(distorted, cfg), cfg.c1);
  const SimilarityMap<Scalar> cs =
      similarity_map(contrast_map(reference, cfg), contrast_map(distorted, cfg), cfg.c2);
  return weighted_deviation(vss, cs, cfg);
}

// 10 log10(255^2 / MSE); +inf for identical images.
template <typename DerivedR, typename DerivedD>
double psnr(const Eigen::ArrayBase<DerivedR>& reference,
            const Eigen::ArrayBase<DerivedD>& distorted) {
  require_same_shape(reference, distorted);
  const double mse =
      (reference.template cast<double>() - distorted.template cast<double>()).square().mean();
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

inline QualityScore ceqi(const ImagePair& pair, const MetricConfig& cfg) {
  return {ceqi(pair.reference(), pair.distorted(), cfg), MetricKind::kCeqi};
}

inline QualityScore qs_baseline(const ImagePair& pair, const MetricConfig& cfg) {
  return {qs_baseline(pair.reference(), pair.distorted(), cfg), MetricKind::kQs};
}

inline QualityScore psnr(const ImagePair& pair) {
  return {psnr(pair.reference(), pair.distorted()), MetricKind::kPsnr};
}

QualityScore score(const ImagePair& pair, MetricKind kind, const MetricConfig& cfg);

}  // namespace iqa

#endif  // IQA_FUSION_HPP_

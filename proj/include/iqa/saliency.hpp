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

#ifndef IQA_SALIENCY_HPP_
#define IQA_SALIENCY_HPP_

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "iqa/config.hpp"
#include "iqa/raster.hpp"
#include "iqa/signal.hpp"

namespace iqa {

// Spectral residual saliency, values >= 0, same shape as the source.
template <typename Scalar>
using SaliencyMap = Grid<Scalar>;

// Added to the amplitude spectrum before the log so empty bins stay finite.
inline constexpr double kLogAmplitudeEpsilon = 1e-10;

// Largest odd filter size not exceeding `requested` that fits a
// rows x cols grid.
inline int fit_filter_size(int requested, Eigen::Index rows, Eigen::Index cols) {
  int limit = static_cast<int>(std::min(rows, cols));
  if (limit % 2 == 0) --limit;
  return std::max(1, std::min(requested, limit));
}

// Bilinear resampling with pixel-center alignment.
template <typename Derived>
Grid<typename Derived::Scalar> resample_bilinear(const Eigen::ArrayBase<Derived>& src,
                                                 Eigen::Index rows, Eigen::Index cols) {
  using Scalar = typename Derived::Scalar;
  Grid<Scalar> dst(rows, cols);
  const double sy = double(src.rows()) / double(rows);
  const double sx = double(src.cols()) / double(cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double fy = std::clamp((r + 0.5) * sy - 0.5, 0.0, double(src.rows() - 1));
    const Eigen::Index y0 = static_cast<Eigen::Index>(fy);
    const Eigen::Index y1 = std::min<Eigen::Index>(y0 + 1, src.rows() - 1);
    const Scalar ty = static_cast<Scalar>(fy - double(y0));
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double fx = std::clamp((c + 0.5) * sx - 0.5, 0.0, double(src.cols() - 1));
      const Eigen::Index x0 = static_cast<Eigen::Index>(fx);
      const Eigen::Index x1 = std::min<Eigen::Index>(x0 + 1, src.cols() - 1);
      const Scalar tx = static_cast<Scalar>(fx - double(x0));
      const auto& s = src.derived();
      const Scalar top = s.coeff(y0, x0) * (1 - tx) + s.coeff(y0, x1) * tx;
      const Scalar bottom = s.coeff(y1, x0) * (1 - tx) + s.coeff(y1, x1) * tx;
      dst(r, c) = top * (1 - ty) + bottom * ty;
    }
  }
  return dst;
}

namespace detail {

template <typename Scalar>
SaliencyMap<Scalar> spectral_residual_native(const Grid<Scalar>& image,
                                             const MetricConfig& cfg) {
  const ComplexGrid<Scalar> spectrum = dft2(image);
  const Grid<Scalar> amplitude = spectrum.abs();
  const Grid<Scalar> log_amplitude = (amplitude + static_cast<Scalar>(kLogAmplitudeEpsilon)).log();

  const int mean_n = fit_filter_size(cfg.mean_filter_n, image.rows(), image.cols());
  const Grid<Scalar> residual =
      log_amplitude - convolve_same(log_amplitude, FilterSpec::mean(mean_n));

  // exp(residual + j * phase); the unit phasor is X / |X|, or 1 where the
  // bin is empty (arg 0 == 0).
  ComplexGrid<Scalar> field(image.rows(), image.cols());
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    const Scalar magnitude = std::exp(residual(i));
    field(i) = amplitude(i) > Scalar(0) ? spectrum(i) * (magnitude / amplitude(i))
                                        : std::complex<Scalar>(magnitude, 0);
  }
  const Grid<Scalar> energy = idft2(field).abs2();

  const FilterSpec smooth = FilterSpec::gaussian(cfg.gaussian_sigma);
  const int support = fit_filter_size(smooth.size, image.rows(), image.cols());
  return convolve_same(energy, FilterSpec::gaussian(cfg.gaussian_sigma, support));
}

}  // namespace detail

// Amplitude-spectrum residual saliency: the log amplitude minus its local
// mean is recombined with the original phase, inverse transformed, squared
// and smoothed. Filters larger than the grid are shrunk to fit (odd size,
// the Gaussian renormalized), so any grid of at least 1x1 is accepted.
template <typename Derived>
SaliencyMap<typename Derived::Scalar> spectral_residual_saliency(
    const Eigen::ArrayBase<Derived>& image, const MetricConfig& cfg) {
  using Scalar = typename Derived::Scalar;
  const Grid<Scalar> src = image;
  if (cfg.saliency_prescale == 1.0) {
    return detail::spectral_residual_native(src, cfg);
  }
  const auto scaled_side = [&](Eigen::Index n) {
    return std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::lround(double(n) * cfg.saliency_prescale)));
  };
  const Grid<Scalar> small =
      resample_bilinear(src, scaled_side(src.rows()), scaled_side(src.cols()));
  return resample_bilinear(detail::spectral_residual_native(small, cfg), src.rows(),
                           src.cols());
}

}  // namespace iqa

#endif  // IQA_SALIENCY_HPP_

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

#ifndef IQA_SIGNAL_HPP_
#define IQA_SIGNAL_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "iqa/error.hpp"
#include "iqa/raster.hpp"

namespace iqa {

template <typename Scalar>
using ComplexGrid = Grid<std::complex<Scalar>>;

// Separable, symmetric smoothing kernel. For a Gaussian, `size` is the
// truncated support; see FilterSpec::gaussian.
struct FilterSpec {
  enum class Kind { kMean, kGaussian };

  Kind kind = Kind::kMean;
  int size = 1;
  double sigma = 0.0;

  static FilterSpec mean(int n) { return FilterSpec{Kind::kMean, n, 0.0}; }

  // Support (2 * ceil(3 * sigma) + 1) unless an explicit odd size is given.
  static FilterSpec gaussian(double sigma, int size = 0) {
    if (size == 0 && sigma > 0.0) {
      size = 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
    }
    return FilterSpec{Kind::kGaussian, size, sigma};
  }

  void validate() const {
    if (size < 1 || size % 2 == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "filter size must be odd and >= 1, got " + std::to_string(size));
    }
    if (kind == Kind::kGaussian && !(sigma > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "gaussian sigma must be positive");
    }
  }

  // 1D taps, normalized to sum to one. The 2D kernel is their outer product.
  template <typename Scalar = double>
  Eigen::Array<Scalar, Eigen::Dynamic, 1> taps() const {
    validate();
    Eigen::Array<Scalar, Eigen::Dynamic, 1> k(size);
    const int radius = size / 2;
    if (kind == Kind::kMean) {
      k.setConstant(Scalar(1) / Scalar(size));
      return k;
    }
    for (int i = -radius; i <= radius; ++i) {
      k(i + radius) = static_cast<Scalar>(std::exp(-(i * i) / (2.0 * sigma * sigma)));
    }
    return k / k.sum();
  }
};

namespace detail {

inline Eigen::Index clamp_index(Eigen::Index i, Eigen::Index n) {
  return std::clamp<Eigen::Index>(i, 0, n - 1);
}

// Row FFTs followed by column FFTs. `inverse` uses Eigen's scaled inverse,
// so the round trip carries the 1 / (H * W) factor.
template <typename Scalar>
void fft_2d_in_place(ComplexGrid<Scalar>& g, bool inverse, bool rows_done = false) {
  using Complex = std::complex<Scalar>;
  Eigen::FFT<Scalar> fft;
  std::vector<Complex> in, out;
  // kissfft cannot plan a length-1 transform; it is the identity anyway.
  rows_done = rows_done || g.cols() == 1;

  in.resize(g.cols());
  out.resize(g.cols());
  for (Eigen::Index r = 0; r < g.rows() && !rows_done; ++r) {
    std::copy(g.row(r).begin(), g.row(r).end(), in.begin());
    if (inverse) {
      fft.inv(out.data(), in.data(), g.cols());
    } else {
      fft.fwd(out.data(), in.data(), g.cols());
    }
    std::copy(out.begin(), out.end(), g.row(r).begin());
  }

  in.resize(g.rows());
  out.resize(g.rows());
  for (Eigen::Index c = 0; c < g.cols() && g.rows() > 1; ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) in[r] = g(r, c);
    if (inverse) {
      fft.inv(out.data(), in.data(), g.rows());
    } else {
      fft.fwd(out.data(), in.data(), g.rows());
    }
    for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = out[r];
  }
}

template <typename Derived>
using RealOf = typename Eigen::NumTraits<typename Derived::Scalar>::Real;

// Separable filtering with replicate borders: horizontal taps over a padded
// row buffer, then vertical taps accumulated one source row at a time.
template <typename Scalar, typename Taps>
Grid<Scalar> separable_filter(const Grid<Scalar>& src, const Taps& taps) {
  const Eigen::Index rows = src.rows();
  const Eigen::Index cols = src.cols();
  const Eigen::Index size = taps.size();
  const Eigen::Index radius = size / 2;

  Grid<Scalar> horizontal(rows, cols);
  std::vector<Scalar> padded(static_cast<std::size_t>(cols + 2 * radius));
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols + 2 * radius; ++c) {
      padded[c] = src(r, clamp_index(c - radius, cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Scalar* window = padded.data() + c;
      Scalar acc(0);
      for (Eigen::Index k = 0; k < size; ++k) acc += taps(k) * window[k];
      horizontal(r, c) = acc;
    }
  }

  Grid<Scalar> out = Grid<Scalar>::Zero(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index k = 0; k < size; ++k) {
      out.row(r) += taps(k) * horizontal.row(clamp_index(r + k - radius, rows));
    }
  }
  return out;
}

}  // namespace detail

// Unnormalized forward 2D DFT of a real or complex grid, any H x W.
template <typename Derived>
ComplexGrid<detail::RealOf<Derived>> dft2(const Eigen::ArrayBase<Derived>& grid) {
  using Real = detail::RealOf<Derived>;
  if constexpr (Eigen::NumTraits<typename Derived::Scalar>::IsComplex) {
    ComplexGrid<Real> spectrum = grid.template cast<std::complex<Real>>();
    detail::fft_2d_in_place(spectrum, /*inverse=*/false);
    return spectrum;
  } else {
    const Grid<Real> real = grid.template cast<Real>();
    ComplexGrid<Real> spectrum(real.rows(), real.cols());
    Eigen::FFT<Real> fft;
    if (real.cols() == 1) {
      spectrum.real() = real;
      spectrum.imag().setZero();
    }
    for (Eigen::Index r = 0; r < real.rows() && real.cols() > 1; ++r) {
      fft.fwd(&spectrum(r, 0), &real(r, 0), real.cols());
    }
    detail::fft_2d_in_place(spectrum, /*inverse=*/false, /*rows_done=*/true);
    return spectrum;
  }
}

// Inverse of dft2, including the 1 / (H * W) factor.
template <typename Derived>
ComplexGrid<detail::RealOf<Derived>> idft2(const Eigen::ArrayBase<Derived>& spectrum) {
  using Real = detail::RealOf<Derived>;
  ComplexGrid<Real> field = spectrum.template cast<std::complex<Real>>();
  detail::fft_2d_in_place(field, /*inverse=*/true);
  return field;
}

// Same-size convolution with replicate padding. The kernel may not exceed
// the smaller grid side (kFilterTooLarge).
template <typename Derived>
Grid<typename Derived::Scalar> convolve_same(const Eigen::ArrayBase<Derived>& grid,
                                             const FilterSpec& filter) {
  using Scalar = typename Derived::Scalar;
  filter.validate();
  if (filter.size > std::min(grid.rows(), grid.cols())) {
    throw Error(ErrorCode::kFilterTooLarge,
                "filter of size " + std::to_string(filter.size) + " does not fit a " +
                    shape_string(grid) + " grid");
  }
  return detail::separable_filter<Scalar>(grid, filter.taps<Scalar>());
}

// Sample standard deviation (divide by N - 1) over the window x window
// neighbourhood of each cell, replicate padding. Two-pass per window so a
// flat neighbourhood gives exactly zero.
template <typename Derived>
Grid<typename Derived::Scalar> local_std(const Eigen::ArrayBase<Derived>& grid, int window) {
  using Scalar = typename Derived::Scalar;
  if (window < 1 || window % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "window must be odd and >= 1, got " + std::to_string(window));
  }
  if (window > std::min(grid.rows(), grid.cols())) {
    throw Error(ErrorCode::kWindowTooLarge,
                "window of size " + std::to_string(window) + " does not fit a " +
                    shape_string(grid) + " grid");
  }
  const Eigen::Index rows = grid.rows();
  const Eigen::Index cols = grid.cols();
  const Eigen::Index radius = window / 2;
  const Eigen::Index n = Eigen::Index(window) * window;
  Grid<Scalar> out(rows, cols);
  if (n == 1) {
    out.setZero();
    return out;
  }

  // Replicate-padded copy keeps the inner loops branch-free.
  Grid<Scalar> padded(rows + 2 * radius, cols + 2 * radius);
  for (Eigen::Index r = 0; r < padded.rows(); ++r) {
    for (Eigen::Index c = 0; c < padded.cols(); ++c) {
      padded(r, c) = grid.derived().coeff(detail::clamp_index(r - radius, rows),
                                          detail::clamp_index(c - radius, cols));
    }
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto block = padded.block(r, c, window, window);
      const Scalar mean = block.sum() / Scalar(n);
      out(r, c) = std::sqrt((block - mean).square().sum() / Scalar(n - 1));
    }
  }
  return out;
}

}  // namespace iqa

#endif  // IQA_SIGNAL_HPP_

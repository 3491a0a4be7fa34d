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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "iqa/signal.hpp"
#include "support/reference_metric.hpp"
#include "support/test_images.hpp"

namespace iqa {
namespace {

using testing::random_grid;

double max_abs_diff(const ComplexGrid<double>& a, const oracle::Spectrum& b) {
  double worst = 0.0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      worst = std::max(worst, std::abs(a(r, c) - b.at(int(r), int(c))));
    }
  }
  return worst;
}

TEST(Dft2, ConstantGridIsDcOnly) {
  const RasterGrid g = RasterGrid::Constant(6, 10, 3.5);
  ComplexGrid<double> f = dft2(g);
  EXPECT_NEAR(f(0, 0).real(), 3.5 * 60, 1e-9);
  EXPECT_NEAR(f(0, 0).imag(), 0.0, 1e-9);
  f(0, 0) = 0.0;
  EXPECT_LT(f.abs().maxCoeff(), 1e-9);
}

TEST(Dft2, ImpulseHasFlatSpectrum) {
  RasterGrid g = RasterGrid::Zero(5, 7);
  g(0, 0) = 1.0;
  const ComplexGrid<double> f = dft2(g);
  EXPECT_LT((f - std::complex<double>(1.0, 0.0)).abs().maxCoeff(), 1e-12);
}

TEST(Dft2, MatchesDirectSummation) {
  const RasterGrid g = random_grid(8, 8, 42, -1.0, 1.0);
  const oracle::Spectrum expected = oracle::direct_dft(oracle::to_complex(testing::to_oracle(g)), false);
  EXPECT_LT(max_abs_diff(dft2(g), expected), 1e-9);
}

TEST(Dft2, DegenerateAxes) {
  for (auto [h, w] : {std::pair{1, 1}, std::pair{1, 7}, std::pair{6, 1}, std::pair{1, 2}}) {
    const RasterGrid g = random_grid(h, w, 17u + h * 31 + w);
    const ComplexGrid<double> f = dft2(g);
    EXPECT_LT(max_abs_diff(f, oracle::direct_dft(oracle::to_complex(testing::to_oracle(g)), false)),
              1e-12)
        << h << "x" << w;
    EXPECT_LT((idft2(f).real() - g).abs().maxCoeff(), 1e-12);
  }
}

TEST(Dft2, ComplexInputMatchesDirectSummation) {
  const RasterGrid re = random_grid(6, 9, 3);
  const RasterGrid im = random_grid(6, 9, 4);
  ComplexGrid<double> z(6, 9);
  z.real() = re;
  z.imag() = im;
  oracle::Spectrum zs(6, 9);
  for (Eigen::Index i = 0; i < z.size(); ++i) zs.v[std::size_t(i)] = z(i);
  EXPECT_LT(max_abs_diff(dft2(z), oracle::direct_dft(zs, false)), 1e-9);
  EXPECT_LT(max_abs_diff(idft2(z), oracle::direct_dft(zs, true)), 1e-9);
}

TEST(Idft2, RoundTrip) {
  const RasterGrid g = random_grid(6, 9, 7);
  const ComplexGrid<double> back = idft2(dft2(g));
  EXPECT_LT((back.real() - g).abs().maxCoeff(), 1e-9);
  EXPECT_LT(back.imag().abs().maxCoeff(), 1e-9);
}

TEST(Idft2, ZeroSpectrumGivesZeroGrid) {
  const ComplexGrid<double> zero = ComplexGrid<double>::Zero(4, 5);
  EXPECT_EQ(idft2(zero).abs().maxCoeff(), 0.0);
}

TEST(Idft2, DcOnlySpectrumGivesOnes) {
  ComplexGrid<double> spectrum = ComplexGrid<double>::Zero(4, 6);
  spectrum(0, 0) = 24.0;
  const ComplexGrid<double> g = idft2(spectrum);
  EXPECT_LT((g - std::complex<double>(1.0, 0.0)).abs().maxCoeff(), 1e-12);
}

TEST(Dft2Property, ParsevalHolds) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const Eigen::Index h = 1 + Eigen::Index(rng() % 64);
    const Eigen::Index w = 1 + Eigen::Index(rng() % 64);
    const RasterGrid g = random_grid(h, w, rng(), -10.0, 10.0);
    const double energy = g.square().sum();
    const double spectral = dft2(g).abs2().sum() / double(h * w);
    EXPECT_NEAR(spectral / energy, 1.0, 1e-6) << h << "x" << w;
  }
}

TEST(Dft2Property, Linearity) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 8; ++trial) {
    const Eigen::Index h = 2 + Eigen::Index(rng() % 20);
    const Eigen::Index w = 2 + Eigen::Index(rng() % 20);
    const RasterGrid a = random_grid(h, w, rng(), -1.0, 1.0);
    const RasterGrid b = random_grid(h, w, rng(), -1.0, 1.0);
    const double k = 2.5;
    const ComplexGrid<double> lhs = dft2((k * a + b).eval());
    const ComplexGrid<double> rhs = k * dft2(a) + dft2(b);
    EXPECT_LT((lhs - rhs).abs().maxCoeff(), 1e-9);
  }
}

TEST(ConvolveSame, ConstantIsUnchanged) {
  const RasterGrid g = RasterGrid::Constant(7, 9, 42.0);
  for (int n : {1, 3, 5, 7}) {
    EXPECT_LT((convolve_same(g, FilterSpec::mean(n)) - 42.0).abs().maxCoeff(), 1e-12);
  }
  EXPECT_LT((convolve_same(g, FilterSpec::gaussian(1.0)) - 42.0).abs().maxCoeff(), 1e-12);
}

TEST(ConvolveSame, RampMatchesNaiveConvolution) {
  RasterGrid ramp(5, 5);
  for (Eigen::Index r = 0; r < 5; ++r) {
    for (Eigen::Index c = 0; c < 5; ++c) ramp(r, c) = double(5 * r + c);
  }
  const RasterGrid got = convolve_same(ramp, FilterSpec::mean(3));
  const oracle::Image want = oracle::convolve(testing::to_oracle(ramp), oracle::mean_kernel(3), 3);
  for (Eigen::Index r = 0; r < 5; ++r) {
    for (Eigen::Index c = 0; c < 5; ++c) EXPECT_NEAR(got(r, c), want.at(int(r), int(c)), 1e-12);
  }
  // Replicate border: top-left mean of {0,0,1,0,0,1,5,5,6}.
  EXPECT_NEAR(got(0, 0), 18.0 / 9.0, 1e-12);
}

TEST(ConvolveSame, GaussianMatchesNaiveConvolution) {
  const RasterGrid g = random_grid(11, 13, 5);
  const FilterSpec spec = FilterSpec::gaussian(1.3);
  ASSERT_EQ(spec.size, 9);
  const RasterGrid got = convolve_same(g, spec);
  const oracle::Image want =
      oracle::convolve(testing::to_oracle(g), oracle::gaussian_kernel(1.3, 9), 9);
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) EXPECT_NEAR(got(r, c), want.at(int(r), int(c)), 1e-10);
  }
}

TEST(ConvolveSame, NarrowGaussianIsNearIdentity) {
  const RasterGrid g = random_grid(8, 8, 9);
  EXPECT_LT((convolve_same(g, FilterSpec::gaussian(0.1)) - g).abs().maxCoeff(), 1e-6);
}

TEST(ConvolveSame, FilterTooLarge) {
  const RasterGrid g = RasterGrid::Zero(4, 9);
  try {
    convolve_same(g, FilterSpec::mean(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kFilterTooLarge);
  }
}

TEST(FilterSpec, GaussianSupportAndMass) {
  const FilterSpec spec = FilterSpec::gaussian(3.8);
  EXPECT_EQ(spec.size, 25);
  EXPECT_NEAR(spec.taps().sum(), 1.0, 1e-15);
  EXPECT_THROW(FilterSpec::mean(4).validate(), Error);
  EXPECT_THROW(FilterSpec::gaussian(-1.0, 3).validate(), Error);
}

TEST(ConvolveSameProperty, Linearity) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const RasterGrid a = random_grid(9, 12, rng());
    const RasterGrid b = random_grid(9, 12, rng());
    const FilterSpec spec = trial % 2 ? FilterSpec::mean(5) : FilterSpec::gaussian(1.2);
    const RasterGrid lhs = convolve_same((3.0 * a + b).eval(), spec);
    const RasterGrid rhs = 3.0 * convolve_same(a, spec) + convolve_same(b, spec);
    EXPECT_LT((lhs - rhs).abs().maxCoeff(), 1e-9);
  }
}

TEST(LocalStd, ConstantGridIsZero) {
  EXPECT_EQ(local_std(RasterGrid::Constant(6, 6, 17.25), 3).abs().maxCoeff(), 0.0);
}

TEST(LocalStd, HandEvaluatedWindow) {
  RasterGrid g = RasterGrid::Zero(5, 5);
  g(3, 3) = 9.0;
  // Window centered at (2, 2) holds eight zeros and the 9: mean 1, var 72 / 8.
  EXPECT_NEAR(local_std(g, 3)(2, 2), 3.0, 1e-12);
}

TEST(LocalStd, WholeGridWindowMatchesGlobalFormula) {
  const RasterGrid g = random_grid(3, 3, 77);
  const double mean = g.mean();
  const double global = std::sqrt((g - mean).square().sum() / 8.0);
  EXPECT_NEAR(local_std(g, 3)(1, 1), global, 1e-12);
}

TEST(LocalStd, MatchesNaiveOracle) {
  const RasterGrid g = random_grid(10, 7, 78);
  for (int window : {1, 3, 5, 7}) {
    const RasterGrid got = local_std(g, window);
    const oracle::Image want = oracle::local_std(testing::to_oracle(g), window);
    for (Eigen::Index i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got(i), want.v[std::size_t(i)], 1e-12) << "window " << window;
    }
  }
}

TEST(LocalStd, WindowErrors) {
  const RasterGrid g = RasterGrid::Zero(4, 8);
  try {
    local_std(g, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWindowTooLarge);
  }
  EXPECT_THROW(local_std(g, 2), Error);
}

TEST(LocalStdProperty, TranslationEquivariantInInterior) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const RasterGrid base = random_grid(20, 20, rng());
    const Eigen::Index dr = 1 + Eigen::Index(rng() % 3);
    const Eigen::Index dc = 1 + Eigen::Index(rng() % 3);
    RasterGrid shifted(20, 20);
    for (Eigen::Index r = 0; r < 20; ++r) {
      for (Eigen::Index c = 0; c < 20; ++c) {
        shifted(r, c) = base(std::max<Eigen::Index>(r - dr, 0), std::max<Eigen::Index>(c - dc, 0));
      }
    }
    const RasterGrid a = local_std(base, 3);
    const RasterGrid b = local_std(shifted, 3);
    for (Eigen::Index r = 2; r + dr < 19; ++r) {
      for (Eigen::Index c = 2; c + dc < 19; ++c) {
        ASSERT_NEAR(b(r + dr, c + dc), a(r, c), 1e-12);
      }
    }
  }
}

TEST(SignalTemplates, FloatInstantiation) {
  const Grid<float> g = random_grid(8, 8, 5).cast<float>();
  const ComplexGrid<float> back = idft2(dft2(g));
  EXPECT_LT((back.real() - g).abs().maxCoeff(), 1e-3f);
  EXPECT_EQ(local_std(g, 3).rows(), 8);
}

}  // namespace
}  // namespace iqa

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

#ifndef IQA_CONTRAST_HPP_
#define IQA_CONTRAST_HPP_

#include "iqa/config.hpp"
#include "iqa/raster.hpp"
#include "iqa/signal.hpp"

namespace iqa {

template <typename Scalar>
using ContrastMap = Grid<Scalar>;

// Local RMS contrast: sample standard deviation over a sliding
// cfg.contrast_window square.
template <typename Derived>
ContrastMap<typename Derived::Scalar> contrast_map(const Eigen::ArrayBase<Derived>& image,
                                                   const MetricConfig& cfg) {
  return local_std(image, cfg.contrast_window);
}

}  // namespace iqa

#endif  // IQA_CONTRAST_HPP_

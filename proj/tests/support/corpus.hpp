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

#ifndef IQA_TESTS_SUPPORT_CORPUS_HPP_
#define IQA_TESTS_SUPPORT_CORPUS_HPP_

#include <filesystem>
#include <sstream>
#include <string>

#include "support/test_images.hpp"

namespace iqa::testing {

// Writes `refs` reference images, each with `levels` blurred and `levels`
// noisy versions, plus a manifest. Subjective scores fall with the level.
// Two databases ("alpha", "beta") split the references.
inline std::filesystem::path write_corpus(const ScratchDir& dir, int refs, int levels,
                                          Eigen::Index side = 24) {
  std::ostringstream csv;
  csv << "distorted,reference,subjective,distortion,database\n";
  for (int r = 0; r < refs; ++r) {
    const RasterGrid ref = add_blob(textured_ramp(side, side, 0.7 * r), side / 2.0, side / 2.0,
                                    side / 6.0, 30.0 + 10.0 * r);
    const std::string ref_name = "ref" + std::to_string(r) + ".png";
    write_gray_png(dir / ref_name, ref);
    const std::string db = r % 2 == 0 ? "alpha" : "beta";
    for (int k = 1; k <= levels; ++k) {
      const std::string blur = "r" + std::to_string(r) + "_blur" + std::to_string(k) + ".png";
      write_gray_png(dir / blur, gaussian_blur(ref, 0.5 * k));
      csv << blur << ',' << ref_name << ',' << (100.0 - 9.0 * k - 0.5 * r) << ",blur," << db << '\n';
      const std::string noise = "r" + std::to_string(r) + "_noise" + std::to_string(k) + ".png";
      const RasterGrid noisy = ref + (random_grid(side, side, 1000u * r + k, -1.0, 1.0) * 6.0 * k);
      write_gray_png(dir / noise, noisy);
      csv << noise << ',' << ref_name << ',' << (95.0 - 8.0 * k + 0.25 * r) << ",noise," << db
          << '\n';
    }
  }
  const std::filesystem::path manifest = dir / "manifest.csv";
  write_text(manifest, csv.str());
  return manifest;
}

}  // namespace iqa::testing

#endif  // IQA_TESTS_SUPPORT_CORPUS_HPP_

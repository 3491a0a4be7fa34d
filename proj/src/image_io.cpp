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

// Image decoding: PNG through libpng's simplified API, uncompressed BMP
// (8-bit palette, 24-bit, 32-bit) by hand.

#include <png.h>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "iqa/raster.hpp"

namespace iqa {
namespace {

using Bytes = std::vector<std::uint8_t>;

Bytes read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kFileNotFound, "no such file: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

double luma_of(std::uint8_t r, std::uint8_t g, std::uint8_t b, const LumaWeights& w) {
  if (r == g && g == b) return r;
  return w[0] * r + w[1] * g + w[2] * b;
}

[[noreturn]] void decode_error(const std::filesystem::path& path, const std::string& what) {
  throw Error(ErrorCode::kDecodeError, path.string() + ": " + what);
}

RasterGrid decode_png(const Bytes& bytes, const std::filesystem::path& path,
                      const LumaWeights& luma) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    decode_error(path, image.message);
  }
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    const std::string message = image.message;
    png_image_free(&image);
    decode_error(path, message);
  }
  RasterGrid grid(image.height, image.width);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const std::uint8_t* p = &pixels[4 * i];
    grid(i) = luma_of(p[0], p[1], p[2], luma);
  }
  return grid;
}

std::uint32_t le32(const Bytes& b, std::size_t at) {
  return std::uint32_t(b[at]) | std::uint32_t(b[at + 1]) << 8 | std::uint32_t(b[at + 2]) << 16 |
         std::uint32_t(b[at + 3]) << 24;
}

std::uint16_t le16(const Bytes& b, std::size_t at) {
  return std::uint16_t(b[at] | b[at + 1] << 8);
}

RasterGrid decode_bmp(const Bytes& bytes, const std::filesystem::path& path,
                      const LumaWeights& luma) {
  if (bytes.size() < 54) decode_error(path, "truncated BMP header");
  const std::uint32_t pixel_offset = le32(bytes, 10);
  const std::uint32_t header_size = le32(bytes, 14);
  if (header_size < 40) decode_error(path, "unsupported BMP core header");
  const auto width = static_cast<std::int32_t>(le32(bytes, 18));
  const auto signed_height = static_cast<std::int32_t>(le32(bytes, 22));
  const std::uint16_t bpp = le16(bytes, 28);
  const std::uint32_t compression = le32(bytes, 30);
  std::uint32_t palette_size = le32(bytes, 46);

  // BI_RGB, or BI_BITFIELDS with the usual 32-bit masks.
  if (compression != 0 && !(compression == 3 && bpp == 32)) {
    decode_error(path, "compressed BMP is not supported");
  }
  if (bpp != 8 && bpp != 24 && bpp != 32) {
    decode_error(path, "unsupported BMP bit depth " + std::to_string(bpp));
  }
  if (width <= 0 || signed_height == 0) decode_error(path, "invalid BMP dimensions");
  const bool bottom_up = signed_height > 0;
  const std::int64_t height = bottom_up ? signed_height : -std::int64_t(signed_height);

  std::vector<std::array<std::uint8_t, 3>> palette;
  if (bpp == 8) {
    if (palette_size == 0) palette_size = 256;
    const std::size_t table = 14 + std::size_t(header_size);
    if (palette_size > 256 || table + 4 * std::size_t(palette_size) > bytes.size()) {
      decode_error(path, "invalid BMP palette");
    }
    for (std::uint32_t i = 0; i < palette_size; ++i) {
      const std::size_t at = table + 4 * i;
      palette.push_back({bytes[at + 2], bytes[at + 1], bytes[at]});  // stored BGR0
    }
  }

  const std::size_t stride = (std::size_t(width) * bpp / 8 + 3) & ~std::size_t(3);
  if (std::size_t(pixel_offset) + stride * std::size_t(height) > bytes.size()) {
    decode_error(path, "truncated BMP pixel data");
  }

  RasterGrid grid(height, width);
  for (std::int64_t r = 0; r < height; ++r) {
    const std::size_t row_start = pixel_offset + stride * std::size_t(bottom_up ? height - 1 - r : r);
    for (std::int32_t c = 0; c < width; ++c) {
      if (bpp == 8) {
        const std::uint8_t index = bytes[row_start + c];
        if (index >= palette.size()) decode_error(path, "palette index out of range");
        const auto& rgb = palette[index];
        grid(r, c) = luma_of(rgb[0], rgb[1], rgb[2], luma);
      } else {
        const std::size_t at = row_start + std::size_t(c) * (bpp / 8);
        grid(r, c) = luma_of(bytes[at + 2], bytes[at + 1], bytes[at], luma);
      }
    }
  }
  return grid;
}

}  // namespace

RasterGrid load_image(const std::filesystem::path& path, const LumaWeights& luma) {
  const Bytes bytes = read_file(path);
  static constexpr std::uint8_t kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

  RasterGrid grid;
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngMagic, 8) == 0) {
    grid = decode_png(bytes, path, luma);
  } else if (bytes.size() >= 2 && bytes[0] == 'B' && bytes[1] == 'M') {
    grid = decode_bmp(bytes, path, luma);
  } else {
    decode_error(path, "not a PNG or BMP file");
  }
  require_metric_size(grid.rows(), grid.cols());
  return grid;
}

}  // namespace iqa

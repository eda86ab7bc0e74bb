// SPDX-License-Identifier: Apache-2.0
//
// Stage payload images: 8-bit RGB for color, 16-bit single-channel for
// depth, carried across stage boundaries as PNG bytes.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace virtfusion::pipeline {

struct ImageRgb8 {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, 3 bytes per pixel

  std::uint8_t* at(int x, int y) {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  const std::uint8_t* at(int x, int y) const {
    return pixels.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
  bool operator==(const ImageRgb8&) const = default;
};

struct ImageGray16 {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> pixels;  // row-major

  bool operator==(const ImageGray16&) const = default;
};

std::string encode_png(const ImageRgb8& image);
std::string encode_png(const ImageGray16& image);

/// Decoders reject payloads of the wrong color type or bit depth.
ImageRgb8 decode_png_rgb8(std::string_view bytes);
ImageGray16 decode_png_gray16(std::string_view bytes);

}  // namespace virtfusion::pipeline

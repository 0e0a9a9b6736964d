// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wcam/image.hpp"

namespace wcam {

/// 8-bit interleaved RGB raster, the final output of rendering.
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Raster() = default;
  Raster(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0) {}
  std::uint8_t* pixel(int y, int x) { return &rgb[(static_cast<std::size_t>(y) * width + x) * 3]; }
  const std::uint8_t* pixel(int y, int x) const { return &rgb[(static_cast<std::size_t>(y) * width + x) * 3]; }
};

/// Reads an 8/16-bit gray, gray+alpha, RGB or RGBA PNG into [0,1] floats.
/// Alpha is dropped; gray stays single-channel.
Image read_png(const std::filesystem::path& path);
Image decode_png(std::span<const std::uint8_t> bytes);

/// Quantizes to 8 bits (round to nearest after clamping to [0,1]).
std::vector<std::uint8_t> encode_png(const Image& image);
std::vector<std::uint8_t> encode_png(const Raster& raster);

/// Writes via a temporary file in the same directory followed by rename, so
/// the destination never holds partial content.
void atomic_write(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void atomic_write(const std::filesystem::path& path, std::string_view text);

std::string sha256_hex(std::span<const std::uint8_t> bytes);
/// SHA-256 over the shape header and the little-endian float32 samples.
std::string image_digest(const Image& image);

std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws IoError on malformed input.
std::vector<std::uint8_t> base64_decode(std::string_view text);

}  // namespace wcam

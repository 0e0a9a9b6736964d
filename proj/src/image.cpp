// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcam/error.hpp"

namespace wcam {

namespace {
void check_shape(int width, int height, int channels) {
  if (width <= 0 || height <= 0) throw DimensionError("image sides must be positive");
  if (channels != 1 && channels != 3) {
    throw DimensionError("images must have 1 or 3 channels, got " + std::to_string(channels));
  }
}
}  // namespace

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  check_shape(width, height, channels);
  data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<float> data)
    : width_(width), height_(height), channels_(channels), data_(std::move(data)) {
  check_shape(width, height, channels);
  if (data_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw DimensionError("image data length does not match width*height*channels");
  }
}

std::span<float> Image::plane(int c) {
  return std::span<float>(data_).subspan(static_cast<std::size_t>(c) * plane_size(), plane_size());
}

std::span<const float> Image::plane(int c) const {
  return std::span<const float>(data_).subspan(static_cast<std::size_t>(c) * plane_size(), plane_size());
}

bool Image::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

void Image::clamp01() noexcept {
  for (auto& v : data_) v = std::clamp(v, 0.0f, 1.0f);
}

double max_abs_diff(const Image& a, const Image& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels()) {
    throw DimensionError("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(da[i]) - db[i]));
  }
  return worst;
}

double energy(const Image& img) {
  double e = 0.0;
  for (float v : img.data()) e += static_cast<double>(v) * v;
  return e;
}

}  // namespace wcam

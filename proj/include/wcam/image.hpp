// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wcam {

/// Channel-planar float image. Samples are nominally in [0,1]; values outside
/// that range are allowed (e.g. after coefficient perturbation) but must be
/// finite wherever an operation requires it.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0f);
  Image(int width, int height, int channels, std::vector<float> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t plane_size() const noexcept { return static_cast<std::size_t>(width_) * height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  float& at(int c, int y, int x) { return data_[index(c, y, x)]; }
  float at(int c, int y, int x) const { return data_[index(c, y, x)]; }

  std::span<float> plane(int c);
  std::span<const float> plane(int c) const;

  std::span<float> data() noexcept { return data_; }
  std::span<const float> data() const noexcept { return data_; }

  bool all_finite() const noexcept;
  /// Clamps every sample to [0,1] in place.
  void clamp01() noexcept;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int c, int y, int x) const noexcept {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

/// Largest absolute per-sample difference; images must have equal shape.
double max_abs_diff(const Image& a, const Image& b);

/// Sum of squares of all samples, accumulated in double.
double energy(const Image& img);

}  // namespace wcam

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wcam/wavelet.hpp"

namespace wcam {

/// Part of a feature cell that falls inside one band of the plane layout.
struct BandSegment {
  bool approximation = false;
  int level = 0;  // 1..J for detail bands; J for the approximation
  Orientation orientation = Orientation::Horizontal;  // unused for the approximation
  Rect plane;      // coefficients covered, plane coordinates
  Rect local;      // same coefficients, band-local coordinates
  Rect footprint;  // pixels whose reconstruction those coefficients govern

  /// "approximation (> 8 px)" or "level 2 vertical (2-4 px)".
  std::string describe() const;
};

struct Feature {
  int id = 0;
  Rect region;
  std::vector<BandSegment> segments;
};

/// Uniform g x g tiling of a square side x side coefficient plane. Feature ids
/// are row-major over the grid: id = row * g + col.
class FeatureLayout {
 public:
  FeatureLayout() = default;
  /// Throws DimensionError unless g divides side and 2^levels divides side.
  FeatureLayout(int side, int grid_size, int levels);

  int side() const noexcept { return side_; }
  int grid_size() const noexcept { return grid_; }
  int levels() const noexcept { return levels_; }
  int cell_size() const noexcept { return grid_ ? side_ / grid_ : 0; }
  int feature_count() const noexcept { return grid_ * grid_; }
  const std::vector<Feature>& features() const noexcept { return features_; }
  const Feature& feature(int k) const { return features_.at(k); }

  int feature_at(int y, int x) const noexcept { return (y / cell_size()) * grid_ + x / cell_size(); }

  /// Row-major side x side mask of the pixels governed by feature k.
  std::vector<std::uint8_t> footprint_mask(int k) const;
  long footprint_area(int k) const;

  /// True when the whole cell lies inside the approximation band.
  bool inside_approximation(int k) const;

  friend bool operator==(const FeatureLayout& a, const FeatureLayout& b) {
    return a.side_ == b.side_ && a.grid_ == b.grid_ && a.levels_ == b.levels_;
  }

 private:
  int side_ = 0;
  int grid_ = 0;
  int levels_ = 0;
  std::vector<Feature> features_;
};

}  // namespace wcam

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/features.hpp"

#include <algorithm>
#include <string>

#include "wcam/error.hpp"

namespace wcam {

namespace {

std::string pixel_scale(bool approximation, int level) {
  if (approximation) return "> " + std::to_string(1 << level) + " px";
  return std::to_string(1 << (level - 1)) + "-" + std::to_string(1 << level) + " px";
}

BandSegment make_segment(const Rect& cell, const Rect& band, bool approximation, int level, Orientation o) {
  BandSegment seg;
  seg.approximation = approximation;
  seg.level = level;
  seg.orientation = o;
  seg.plane = intersect(cell, band);
  seg.local = {seg.plane.y0 - band.y0, seg.plane.x0 - band.x0, seg.plane.y1 - band.y0, seg.plane.x1 - band.x0};
  seg.footprint = {seg.local.y0 << level, seg.local.x0 << level, seg.local.y1 << level, seg.local.x1 << level};
  return seg;
}

}  // namespace

std::string BandSegment::describe() const {
  if (approximation) return "approximation (" + pixel_scale(true, level) + ")";
  return "level " + std::to_string(level) + " " + to_string(orientation) + " (" + pixel_scale(false, level) + ")";
}

FeatureLayout::FeatureLayout(int side, int grid_size, int levels) : side_(side), grid_(grid_size), levels_(levels) {
  if (grid_size < 1) throw DimensionError("grid size must be >= 1");
  if (levels < 1) throw DimensionError("levels must be >= 1");
  if (side < 1 || side % grid_size != 0) {
    throw DimensionError("grid size " + std::to_string(grid_size) + " does not divide side " + std::to_string(side));
  }
  check_divisible(side, side, levels);

  const int cell = side / grid_size;
  const Rect approx = approximation_rect(side, side, levels);
  features_.reserve(static_cast<std::size_t>(grid_size) * grid_size);
  for (int r = 0; r < grid_size; ++r) {
    for (int c = 0; c < grid_size; ++c) {
      Feature f;
      f.id = r * grid_size + c;
      f.region = {r * cell, c * cell, (r + 1) * cell, (c + 1) * cell};
      if (!intersect(f.region, approx).empty()) {
        f.segments.push_back(make_segment(f.region, approx, true, levels, Orientation::Horizontal));
      }
      for (int j = levels; j >= 1; --j) {
        for (Orientation o : {Orientation::Horizontal, Orientation::Vertical, Orientation::Diagonal}) {
          const Rect band = band_rect(side, side, j, o);
          if (!intersect(f.region, band).empty()) f.segments.push_back(make_segment(f.region, band, false, j, o));
        }
      }
      features_.push_back(std::move(f));
    }
  }
}

std::vector<std::uint8_t> FeatureLayout::footprint_mask(int k) const {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(side_) * side_, 0);
  for (const auto& seg : feature(k).segments) {
    for (int y = seg.footprint.y0; y < seg.footprint.y1; ++y) {
      std::fill_n(mask.begin() + static_cast<std::ptrdiff_t>(y) * side_ + seg.footprint.x0, seg.footprint.width(), 1);
    }
  }
  return mask;
}

long FeatureLayout::footprint_area(int k) const {
  const auto mask = footprint_mask(k);
  return static_cast<long>(std::count(mask.begin(), mask.end(), 1));
}

bool FeatureLayout::inside_approximation(int k) const {
  const Rect approx = approximation_rect(side_, side_, levels_);
  return intersect(feature(k).region, approx) == feature(k).region;
}

}  // namespace wcam

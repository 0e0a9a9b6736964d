// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "wcam/engine.hpp"
#include "wcam/io.hpp"

namespace wcam {

enum class HeatmapMode { Scale, Spatial };
enum class Palette { Hot, Gray };

Palette parse_palette(const std::string& name);

/// Maps t in [0,1] to a color whose luminance is strictly increasing in t.
std::array<std::uint8_t, 3> palette_color(Palette palette, double t);

/// Rendering clips TSIs to this value; stored results keep the raw numbers.
inline constexpr double kTsiDisplayCap = 1.5;

struct RenderOptions {
  Palette palette = Palette::Hot;
  /// Scale mode: draw the band boundaries of every level.
  bool gridlines = false;
  /// Spatial mode: weight of the heatmap over the grayscale source.
  double alpha = 0.6;
  /// Upper end of the color scale; defaults to the maximum displayed value.
  std::optional<double> vmax;
  /// Nearest-neighbour magnification.
  int upscale = 1;
};

/// Values the renderer maps to colors: per coefficient of the plane in scale
/// mode, per pixel (unnormalized projection) in spatial mode.
std::vector<double> display_values(const WcamResult& result, HeatmapMode mode);

/// Scale mode paints the pyramid layout with each feature's TSI; spatial mode
/// paints the spatial projection, blended over `source` when given.
Raster render_heatmap(const WcamResult& result, HeatmapMode mode, const RenderOptions& options = {},
                      const Image* source = nullptr);

/// Side-by-side rendering of two results on one shared color scale (the
/// maximum over both unless options.vmax is set).
Raster render_comparison(const WcamResult& left, const WcamResult& right, HeatmapMode mode,
                         const RenderOptions& options = {}, const Image* left_source = nullptr,
                         const Image* right_source = nullptr);

}  // namespace wcam

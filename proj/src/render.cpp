// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/render.hpp"

#include <algorithm>
#include <cmath>

#include "wcam/error.hpp"

namespace wcam {

Palette parse_palette(const std::string& name) {
  if (name == "hot") return Palette::Hot;
  if (name == "gray" || name == "grey") return Palette::Gray;
  throw ConfigError("unknown palette '" + name + "' (expected hot or gray)");
}

std::array<std::uint8_t, 3> palette_color(Palette palette, double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  auto byte = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  if (palette == Palette::Gray) return {byte(t), byte(t), byte(t)};
  // black -> red -> yellow -> white
  return {byte(3.0 * t), byte(3.0 * t - 1.0), byte(3.0 * t - 2.0)};
}

std::vector<double> display_values(const WcamResult& result, HeatmapMode mode) {
  const FeatureLayout& layout = result.layout;
  const int side = layout.side();
  std::vector<double> values(static_cast<std::size_t>(side) * side, 0.0);
  if (mode == HeatmapMode::Scale) {
    for (int y = 0; y < side; ++y) {
      for (int x = 0; x < side; ++x) {
        values[static_cast<std::size_t>(y) * side + x] =
            std::clamp(result.tsi.at(layout.feature_at(y, x)), 0.0, kTsiDisplayCap);
      }
    }
    return values;
  }
  WcamResult clipped = result;
  for (double& v : clipped.tsi) v = std::clamp(v, 0.0, kTsiDisplayCap);
  return project_spatial(clipped, false);
}

namespace {

void paint(Raster& raster, int x_offset, const std::vector<double>& values, int side, double vmax,
           const RenderOptions& options, const Image* source) {
  const int up = std::max(1, options.upscale);
  for (int y = 0; y < side * up; ++y) {
    for (int x = 0; x < side * up; ++x) {
      const int sy = y / up;
      const int sx = x / up;
      const double t = vmax > 0.0 ? values[static_cast<std::size_t>(sy) * side + sx] / vmax : 0.0;
      auto color = palette_color(options.palette, t);
      std::uint8_t* px = raster.pixel(y, x_offset + x);
      if (source) {
        double gray = 0.0;
        for (int c = 0; c < source->channels(); ++c) gray += source->at(c, sy, sx);
        gray = std::clamp(gray / source->channels(), 0.0, 1.0) * 255.0;
        for (int c = 0; c < 3; ++c) {
          px[c] = static_cast<std::uint8_t>(std::lround((1.0 - options.alpha) * gray + options.alpha * color[c]));
        }
      } else {
        std::copy(color.begin(), color.end(), px);
      }
    }
  }
}

void draw_gridlines(Raster& raster, int x_offset, const FeatureLayout& layout, int up) {
  const int side = layout.side();
  constexpr std::uint8_t kLine[3] = {96, 160, 255};
  auto hline = [&](int y, int x0, int x1) {
    for (int x = x0 * up; x < x1 * up; ++x) std::copy(kLine, kLine + 3, raster.pixel(y * up, x_offset + x));
  };
  auto vline = [&](int x, int y0, int y1) {
    for (int y = y0 * up; y < y1 * up; ++y) std::copy(kLine, kLine + 3, raster.pixel(y, x_offset + x * up));
  };
  for (int j = 1; j <= layout.levels(); ++j) {
    const int half = side >> j;
    hline(half, 0, 2 * half);
    vline(half, 0, 2 * half);
  }
}

void check_source(const Image* source, const WcamResult& result) {
  if (source && (source->width() != result.layout.side() || source->height() != result.layout.side())) {
    throw DimensionError("render: source image does not match the attribution layout");
  }
}

double peak(const std::vector<double>& v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

Raster render_heatmap(const WcamResult& result, HeatmapMode mode, const RenderOptions& options,
                      const Image* source) {
  check_source(source, result);
  const auto values = display_values(result, mode);
  const int side = result.layout.side();
  const int up = std::max(1, options.upscale);
  Raster raster(side * up, side * up);
  const double vmax = options.vmax.value_or(peak(values));
  paint(raster, 0, values, side, vmax, options, mode == HeatmapMode::Spatial ? source : nullptr);
  if (mode == HeatmapMode::Scale && options.gridlines) draw_gridlines(raster, 0, result.layout, up);
  return raster;
}

Raster render_comparison(const WcamResult& left, const WcamResult& right, HeatmapMode mode,
                         const RenderOptions& options, const Image* left_source, const Image* right_source) {
  if (left.layout.side() != right.layout.side()) throw DimensionError("render_comparison: layouts differ in size");
  check_source(left_source, left);
  check_source(right_source, right);
  const auto lv = display_values(left, mode);
  const auto rv = display_values(right, mode);
  const double vmax = options.vmax.value_or(std::max(peak(lv), peak(rv)));
  const int side = left.layout.side();
  const int up = std::max(1, options.upscale);
  constexpr int kGap = 4;
  Raster raster(2 * side * up + kGap, side * up);
  std::fill(raster.rgb.begin(), raster.rgb.end(), 255);
  const bool spatial = mode == HeatmapMode::Spatial;
  paint(raster, 0, lv, side, vmax, options, spatial ? left_source : nullptr);
  paint(raster, side * up + kGap, rv, side, vmax, options, spatial ? right_source : nullptr);
  if (!spatial && options.gridlines) {
    draw_gridlines(raster, 0, left.layout, up);
    draw_gridlines(raster, side * up + kGap, right.layout, up);
  }
  return raster;
}

}  // namespace wcam

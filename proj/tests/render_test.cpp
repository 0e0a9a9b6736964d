// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/render.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "wcam/engine.hpp"
#include "wcam/error.hpp"

namespace wcam {
namespace {

WcamResult synthetic(std::vector<double> tsi) {
  WcamResult r;
  r.layout = featurize(64, WcamConfig{});
  r.tsi = std::move(tsi);
  return r;
}

int brightness(const Raster& r, int y, int x) {
  const auto* p = r.pixel(y, x);
  return p[0] + p[1] + p[2];
}

TEST(Palette, MonotoneBrightness) {
  for (auto palette : {Palette::Hot, Palette::Gray}) {
    int last = -1;
    for (int i = 0; i <= 100; ++i) {
      const auto c = palette_color(palette, i / 100.0);
      const int b = c[0] + c[1] + c[2];
      EXPECT_GE(b, last);
      last = b;
    }
    EXPECT_EQ(palette_color(palette, 0.0), (std::array<std::uint8_t, 3>{0, 0, 0}));
    EXPECT_EQ(palette_color(palette, 1.0), (std::array<std::uint8_t, 3>{255, 255, 255}));
  }
  EXPECT_THROW(parse_palette("viridis"), ConfigError);
}

TEST(RenderHeatmap, ZeroTsiIsUniformDark) {
  for (auto mode : {HeatmapMode::Scale, HeatmapMode::Spatial}) {
    const Raster r = render_heatmap(synthetic(std::vector<double>(64, 0.0)), mode);
    ASSERT_EQ(r.width, 64);
    for (auto v : r.rgb) EXPECT_EQ(v, 0);
  }
}

TEST(RenderHeatmap, LargerTsiIsBrighter) {
  std::vector<double> tsi(64, 0.0);
  for (int k = 0; k < 64; ++k) tsi[k] = k / 64.0;
  const Raster r = render_heatmap(synthetic(tsi), HeatmapMode::Scale);
  const FeatureLayout layout = featurize(64, WcamConfig{});
  for (int k = 1; k < 64; ++k) {
    const Rect a = layout.feature(k - 1).region, b = layout.feature(k).region;
    EXPECT_LE(brightness(r, a.y0 + 1, a.x0 + 1), brightness(r, b.y0 + 1, b.x0 + 1));
  }
}

TEST(RenderHeatmap, ClipsExtremeValues) {
  std::vector<double> tsi(64, 0.0);
  tsi[5] = -0.3;
  tsi[6] = 7.0;
  tsi[7] = 1.0;
  const auto values = display_values(synthetic(tsi), HeatmapMode::Scale);
  const FeatureLayout layout = featurize(64, WcamConfig{});
  auto at = [&](int k) {
    const Rect r = layout.feature(k).region;
    return values[r.y0 * 64 + r.x0];
  };
  EXPECT_EQ(at(5), 0.0);
  EXPECT_EQ(at(6), kTsiDisplayCap);
  EXPECT_EQ(at(7), 1.0);
}

TEST(RenderHeatmap, UpscaleAndGridlines) {
  std::vector<double> tsi(64, 0.5);
  RenderOptions opts;
  opts.upscale = 3;
  opts.gridlines = true;
  const Raster r = render_heatmap(synthetic(tsi), HeatmapMode::Scale, opts);
  EXPECT_EQ(r.width, 192);
  EXPECT_EQ(r.height, 192);
  EXPECT_NE(brightness(r, 32 * 3, 10), brightness(r, 10, 10));
}

TEST(RenderHeatmap, SpatialOverlayBlendsSource) {
  std::vector<double> tsi(64, 0.0);
  const Image src(64, 64, 3, 1.0f);
  RenderOptions opts;
  opts.alpha = 0.25;
  const Raster r = render_heatmap(synthetic(tsi), HeatmapMode::Spatial, opts, &src);
  EXPECT_EQ(r.pixel(3, 3)[0], static_cast<std::uint8_t>(std::lround(0.75 * 255)));
  const Image wrong(32, 32, 3);
  EXPECT_THROW(render_heatmap(synthetic(tsi), HeatmapMode::Spatial, opts, &wrong), DimensionError);
}

TEST(RenderComparison, SharedScaleUsesMaxOverBoth) {
  std::vector<double> left(64, 0.0), right(64, 0.0);
  left[9] = 0.4;
  right[9] = 0.8;
  const Raster r = render_comparison(synthetic(left), synthetic(right), HeatmapMode::Scale);
  const Rect cell = featurize(64, WcamConfig{}).feature(9).region;
  const int gap = r.width - 128;
  EXPECT_EQ(gap, 4);
  const auto* lp = r.pixel(cell.y0, cell.x0);
  const auto* rp = r.pixel(cell.y0, 64 + gap + cell.x0);
  EXPECT_EQ((std::array<std::uint8_t, 3>{lp[0], lp[1], lp[2]}), palette_color(Palette::Hot, 0.5));
  EXPECT_EQ((std::array<std::uint8_t, 3>{rp[0], rp[1], rp[2]}), palette_color(Palette::Hot, 1.0));

  // The individual render of the left result would saturate instead.
  const Raster solo = render_heatmap(synthetic(left), HeatmapMode::Scale);
  EXPECT_EQ(solo.pixel(cell.y0, cell.x0)[2], 255);
}

}  // namespace
}  // namespace wcam

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <span>
#include <string>
#include <vector>

#include "wcam/image.hpp"

namespace wcam {

enum class WaveletFamily { Haar, Daubechies2 };
enum class Boundary { Periodic, Symmetric };
enum class Orientation { Horizontal, Vertical, Diagonal };

std::string to_string(WaveletFamily f);
std::string to_string(Boundary b);
std::string to_string(Orientation o);
WaveletFamily parse_family(const std::string& name);
Boundary parse_boundary(const std::string& name);

struct WaveletSpec {
  WaveletFamily family = WaveletFamily::Haar;
  int levels = 3;
  Boundary boundary = Boundary::Periodic;

  /// Throws ConfigError for unusable combinations (levels < 1, or a
  /// symmetric boundary with a filter longer than two taps).
  void validate() const;
  friend bool operator==(const WaveletSpec&, const WaveletSpec&) = default;
};

/// Orthonormal analysis filters. `high[k] = (-1)^k low[L-1-k]`.
struct FilterBank {
  std::vector<double> low;
  std::vector<double> high;
};

FilterBank filter_bank(WaveletFamily family);

/// Half-open rectangle in row/column coordinates.
struct Rect {
  int y0 = 0, x0 = 0, y1 = 0, x1 = 0;

  int height() const noexcept { return y1 - y0; }
  int width() const noexcept { return x1 - x0; }
  long area() const noexcept { return static_cast<long>(height()) * width(); }
  bool empty() const noexcept { return y1 <= y0 || x1 <= x0; }
  bool contains(int y, int x) const noexcept { return y >= y0 && y < y1 && x >= x0 && x < x1; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

Rect intersect(const Rect& a, const Rect& b) noexcept;

/// Row-major band of coefficients.
struct Band {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
  double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
  friend bool operator==(const Band&, const Band&) = default;
};

struct DetailLevel {
  Band horizontal;  // low-pass along x, high-pass along y
  Band vertical;    // high-pass along x, low-pass along y
  Band diagonal;

  const Band& band(Orientation o) const;
  Band& band(Orientation o);
  friend bool operator==(const DetailLevel&, const DetailLevel&) = default;
};

struct ChannelPyramid {
  Band approximation;
  /// details[j-1] holds level j; level 1 is the finest (1-2 pixel scale).
  std::vector<DetailLevel> details;
  friend bool operator==(const ChannelPyramid&, const ChannelPyramid&) = default;
};

struct WaveletPyramid {
  WaveletSpec spec;
  int width = 0;
  int height = 0;
  std::vector<ChannelPyramid> channels;

  std::size_t coefficient_count() const;
  friend bool operator==(const WaveletPyramid&, const WaveletPyramid&) = default;
};

/// Single-plane nested-corner layout of a pyramid, one plane per channel.
/// At each level the current block is split as
///
///     +-----------+------------+
///     |  coarser  | horizontal |
///     +-----------+------------+
///     |  vertical |  diagonal  |
///     +-----------+------------+
///
/// so the approximation band ends up in the NW corner.
struct CoefficientPlane {
  WaveletSpec spec;
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> data;

  double& at(int c, int y, int x) { return data[(static_cast<std::size_t>(c) * height + y) * width + x]; }
  double at(int c, int y, int x) const { return data[(static_cast<std::size_t>(c) * height + y) * width + x]; }
  std::span<double> channel(int c);
  std::span<const double> channel(int c) const;
  friend bool operator==(const CoefficientPlane&, const CoefficientPlane&) = default;
};

/// Where a detail band of `level` (1-based) sits in a width x height plane.
Rect band_rect(int width, int height, int level, Orientation o);
/// Where the approximation band sits after `levels` decompositions.
Rect approximation_rect(int width, int height, int levels);

/// Checks that both sides are divisible by 2^levels; throws DimensionError.
void check_divisible(int width, int height, int levels);

WaveletPyramid dwt2d(const Image& image, const WaveletSpec& spec);
Image idwt2d(const WaveletPyramid& pyramid);

CoefficientPlane pyramid_layout(const WaveletPyramid& pyramid);
WaveletPyramid plane_to_pyramid(const CoefficientPlane& plane, const WaveletSpec& spec);

/// Transform straight into / out of the plane layout. dwt2d and idwt2d are
/// thin wrappers over these; hot loops that perturb coefficients use them
/// directly.
CoefficientPlane forward_plane(const Image& image, const WaveletSpec& spec);
Image inverse_plane(const CoefficientPlane& plane);

}  // namespace wcam

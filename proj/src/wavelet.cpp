// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/wavelet.hpp"

#include <algorithm>
#include <cmath>

#include "wcam/error.hpp"

namespace wcam {

std::string to_string(WaveletFamily f) {
  switch (f) {
    case WaveletFamily::Haar:
      return "haar";
    case WaveletFamily::Daubechies2:
      return "db2";
  }
  return "?";
}

std::string to_string(Boundary b) { return b == Boundary::Periodic ? "periodic" : "symmetric"; }

std::string to_string(Orientation o) {
  switch (o) {
    case Orientation::Horizontal:
      return "horizontal";
    case Orientation::Vertical:
      return "vertical";
    case Orientation::Diagonal:
      return "diagonal";
  }
  return "?";
}

WaveletFamily parse_family(const std::string& name) {
  if (name == "haar") return WaveletFamily::Haar;
  if (name == "db2" || name == "daubechies2") return WaveletFamily::Daubechies2;
  throw ConfigError("unknown wavelet family '" + name + "' (expected haar or db2)");
}

Boundary parse_boundary(const std::string& name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "symmetric") return Boundary::Symmetric;
  throw ConfigError("unknown boundary '" + name + "' (expected periodic or symmetric)");
}

FilterBank filter_bank(WaveletFamily family) {
  FilterBank fb;
  switch (family) {
    case WaveletFamily::Haar: {
      const double s = 1.0 / std::sqrt(2.0);
      fb.low = {s, s};
      break;
    }
    case WaveletFamily::Daubechies2: {
      const double r3 = std::sqrt(3.0);
      const double d = 4.0 * std::sqrt(2.0);
      fb.low = {(1 + r3) / d, (3 + r3) / d, (3 - r3) / d, (1 - r3) / d};
      break;
    }
  }
  const std::size_t n = fb.low.size();
  fb.high.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    fb.high[k] = (k % 2 == 0 ? 1.0 : -1.0) * fb.low[n - 1 - k];
  }
  return fb;
}

void WaveletSpec::validate() const {
  if (levels < 1) throw ConfigError("wavelet levels must be >= 1");
  // A critically sampled transform with symmetric extension is only
  // perfectly reconstructing here when the filter never reaches past the
  // signal end, i.e. for two-tap filters.
  if (boundary == Boundary::Symmetric && filter_bank(family).low.size() > 2) {
    throw ConfigError("symmetric boundary is only supported for the haar family");
  }
}

Rect intersect(const Rect& a, const Rect& b) noexcept {
  Rect r{std::max(a.y0, b.y0), std::max(a.x0, b.x0), std::min(a.y1, b.y1), std::min(a.x1, b.x1)};
  if (r.empty()) return Rect{};
  return r;
}

const Band& DetailLevel::band(Orientation o) const {
  switch (o) {
    case Orientation::Horizontal:
      return horizontal;
    case Orientation::Vertical:
      return vertical;
    default:
      return diagonal;
  }
}

Band& DetailLevel::band(Orientation o) {
  return const_cast<Band&>(static_cast<const DetailLevel&>(*this).band(o));
}

std::size_t WaveletPyramid::coefficient_count() const {
  std::size_t n = 0;
  for (const auto& ch : channels) {
    n += ch.approximation.data.size();
    for (const auto& d : ch.details) n += d.horizontal.data.size() + d.vertical.data.size() + d.diagonal.data.size();
  }
  return n;
}

std::span<double> CoefficientPlane::channel(int c) {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  return std::span<double>(data).subspan(c * n, n);
}

std::span<const double> CoefficientPlane::channel(int c) const {
  const std::size_t n = static_cast<std::size_t>(width) * height;
  return std::span<const double>(data).subspan(c * n, n);
}

Rect band_rect(int width, int height, int level, Orientation o) {
  const int bw = width >> level;
  const int bh = height >> level;
  switch (o) {
    case Orientation::Horizontal:
      return {0, bw, bh, 2 * bw};
    case Orientation::Vertical:
      return {bh, 0, 2 * bh, bw};
    default:
      return {bh, bw, 2 * bh, 2 * bw};
  }
}

Rect approximation_rect(int width, int height, int levels) { return {0, 0, height >> levels, width >> levels}; }

void check_divisible(int width, int height, int levels) {
  const int step = 1 << levels;
  if (width <= 0 || height <= 0 || width % step != 0 || height % step != 0) {
    throw DimensionError("image " + std::to_string(width) + "x" + std::to_string(height) +
                         " is not divisible by 2^" + std::to_string(levels) + "=" + std::to_string(step));
  }
}

namespace {

// One analysis step on a strided line of length n (even): n/2 low-pass and
// n/2 high-pass outputs, periodic indexing. For two-tap filters periodic and
// symmetric extension coincide because 2i+1 < n.
void analyze(const FilterBank& fb, const double* in, int n, double* lo, double* hi) {
  const int taps = static_cast<int>(fb.low.size());
  for (int i = 0; i < n / 2; ++i) {
    double a = 0.0, d = 0.0;
    for (int k = 0; k < taps; ++k) {
      const double v = in[(2 * i + k) % n];
      a += fb.low[k] * v;
      d += fb.high[k] * v;
    }
    lo[i] = a;
    hi[i] = d;
  }
}

// Transpose of analyze; exact inverse for orthonormal banks.
void synthesize(const FilterBank& fb, const double* lo, const double* hi, int n, double* out) {
  const int taps = static_cast<int>(fb.low.size());
  std::fill(out, out + n, 0.0);
  for (int i = 0; i < n / 2; ++i) {
    for (int k = 0; k < taps; ++k) {
      out[(2 * i + k) % n] += fb.low[k] * lo[i] + fb.high[k] * hi[i];
    }
  }
}

// Single-level analysis of the top-left w x h block of a plane with row
// stride `stride`.
void forward_level(const FilterBank& fb, double* plane, int stride, int w, int h, std::vector<double>& tmp,
                   std::vector<double>& line) {
  tmp.resize(static_cast<std::size_t>(w) * h);
  line.resize(2 * static_cast<std::size_t>(std::max(w, h)));
  const int hw = w / 2;
  const int hh = h / 2;
  for (int y = 0; y < h; ++y) {
    double* row = tmp.data() + static_cast<std::size_t>(y) * w;
    analyze(fb, plane + static_cast<std::size_t>(y) * stride, w, row, row + hw);
  }
  double* col = line.data();
  double* out = line.data() + h;
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) col[y] = tmp[static_cast<std::size_t>(y) * w + x];
    analyze(fb, col, h, out, out + hh);
    // Low-x columns feed NW (low-y) and NE (high-y, horizontal detail);
    // high-x columns feed SW (low-y, vertical detail) and SE (diagonal).
    const bool low_x = x < hw;
    const int cx = low_x ? x : x - hw;
    const int top_row = low_x ? 0 : hh;
    for (int i = 0; i < hh; ++i) {
      plane[static_cast<std::size_t>(top_row + i) * stride + cx] = out[i];
      plane[static_cast<std::size_t>(top_row + i) * stride + cx + hw] = out[hh + i];
    }
  }
}

void inverse_level(const FilterBank& fb, double* plane, int stride, int w, int h, std::vector<double>& tmp,
                   std::vector<double>& line) {
  tmp.resize(static_cast<std::size_t>(w) * h);
  line.resize(2 * static_cast<std::size_t>(std::max(w, h)));
  const int hw = w / 2;
  const int hh = h / 2;
  double* lohi = line.data();
  double* col = line.data() + h;
  for (int x = 0; x < w; ++x) {
    const bool low_x = x < hw;
    const int cx = low_x ? x : x - hw;
    const int top_row = low_x ? 0 : hh;
    for (int i = 0; i < hh; ++i) {
      lohi[i] = plane[static_cast<std::size_t>(top_row + i) * stride + cx];
      lohi[hh + i] = plane[static_cast<std::size_t>(top_row + i) * stride + cx + hw];
    }
    synthesize(fb, lohi, lohi + hh, h, col);
    for (int y = 0; y < h; ++y) tmp[static_cast<std::size_t>(y) * w + x] = col[y];
  }
  for (int y = 0; y < h; ++y) {
    const double* row = tmp.data() + static_cast<std::size_t>(y) * w;
    synthesize(fb, row, row + hw, w, plane + static_cast<std::size_t>(y) * stride);
  }
}

void check_plane_structure(const CoefficientPlane& plane) {
  if (plane.width <= 0 || plane.height <= 0 || plane.channels <= 0 ||
      plane.data.size() != static_cast<std::size_t>(plane.width) * plane.height * plane.channels) {
    throw StructureError("coefficient plane size does not match its declared shape");
  }
}

void copy_band_out(const CoefficientPlane& plane, int c, const Rect& r, Band& band) {
  band.width = r.width();
  band.height = r.height();
  band.data.resize(static_cast<std::size_t>(band.width) * band.height);
  for (int y = 0; y < band.height; ++y) {
    for (int x = 0; x < band.width; ++x) band.at(y, x) = plane.at(c, r.y0 + y, r.x0 + x);
  }
}

void copy_band_in(const Band& band, const Rect& r, CoefficientPlane& plane, int c) {
  if (band.width != r.width() || band.height != r.height() ||
      band.data.size() != static_cast<std::size_t>(band.width) * band.height) {
    throw StructureError("band size does not match the pyramid geometry");
  }
  for (int y = 0; y < band.height; ++y) {
    for (int x = 0; x < band.width; ++x) plane.at(c, r.y0 + y, r.x0 + x) = band.at(y, x);
  }
}

constexpr Orientation kOrientations[] = {Orientation::Horizontal, Orientation::Vertical, Orientation::Diagonal};

}  // namespace

CoefficientPlane forward_plane(const Image& image, const WaveletSpec& spec) {
  spec.validate();
  check_divisible(image.width(), image.height(), spec.levels);
  if (!image.all_finite()) throw NonFiniteInput("image contains non-finite samples");

  const FilterBank fb = filter_bank(spec.family);
  CoefficientPlane plane{spec, image.width(), image.height(), image.channels(), {}};
  plane.data.assign(image.data().begin(), image.data().end());
  std::vector<double> tmp, line;
  for (int c = 0; c < plane.channels; ++c) {
    double* base = plane.channel(c).data();
    for (int j = 0; j < spec.levels; ++j) {
      forward_level(fb, base, plane.width, plane.width >> j, plane.height >> j, tmp, line);
    }
  }
  return plane;
}

Image inverse_plane(const CoefficientPlane& plane) {
  check_plane_structure(plane);
  plane.spec.validate();
  check_divisible(plane.width, plane.height, plane.spec.levels);

  const FilterBank fb = filter_bank(plane.spec.family);
  std::vector<double> work(plane.data);
  std::vector<double> tmp, line;
  const std::size_t n = static_cast<std::size_t>(plane.width) * plane.height;
  for (int c = 0; c < plane.channels; ++c) {
    double* base = work.data() + c * n;
    for (int j = plane.spec.levels - 1; j >= 0; --j) {
      inverse_level(fb, base, plane.width, plane.width >> j, plane.height >> j, tmp, line);
    }
  }
  std::vector<float> samples(work.size());
  std::transform(work.begin(), work.end(), samples.begin(), [](double v) { return static_cast<float>(v); });
  return Image(plane.width, plane.height, plane.channels, std::move(samples));
}

CoefficientPlane pyramid_layout(const WaveletPyramid& pyramid) {
  pyramid.spec.validate();
  check_divisible(pyramid.width, pyramid.height, pyramid.spec.levels);
  if (pyramid.channels.empty()) throw StructureError("pyramid has no channels");
  const int levels = pyramid.spec.levels;
  CoefficientPlane plane{pyramid.spec, pyramid.width, pyramid.height, static_cast<int>(pyramid.channels.size()), {}};
  plane.data.assign(static_cast<std::size_t>(plane.width) * plane.height * plane.channels, 0.0);
  for (int c = 0; c < plane.channels; ++c) {
    const ChannelPyramid& ch = pyramid.channels[c];
    if (static_cast<int>(ch.details.size()) != levels) throw StructureError("pyramid level count mismatch");
    copy_band_in(ch.approximation, approximation_rect(plane.width, plane.height, levels), plane, c);
    for (int j = 1; j <= levels; ++j) {
      for (Orientation o : kOrientations) {
        copy_band_in(ch.details[j - 1].band(o), band_rect(plane.width, plane.height, j, o), plane, c);
      }
    }
  }
  return plane;
}

WaveletPyramid plane_to_pyramid(const CoefficientPlane& plane, const WaveletSpec& spec) {
  spec.validate();
  check_plane_structure(plane);
  check_divisible(plane.width, plane.height, spec.levels);
  WaveletPyramid pyramid{spec, plane.width, plane.height, {}};
  pyramid.channels.resize(plane.channels);
  for (int c = 0; c < plane.channels; ++c) {
    ChannelPyramid& ch = pyramid.channels[c];
    copy_band_out(plane, c, approximation_rect(plane.width, plane.height, spec.levels), ch.approximation);
    ch.details.resize(spec.levels);
    for (int j = 1; j <= spec.levels; ++j) {
      for (Orientation o : kOrientations) {
        copy_band_out(plane, c, band_rect(plane.width, plane.height, j, o), ch.details[j - 1].band(o));
      }
    }
  }
  return pyramid;
}

WaveletPyramid dwt2d(const Image& image, const WaveletSpec& spec) {
  return plane_to_pyramid(forward_plane(image, spec), spec);
}

Image idwt2d(const WaveletPyramid& pyramid) { return inverse_plane(pyramid_layout(pyramid)); }

}  // namespace wcam

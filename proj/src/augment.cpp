// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "wcam/error.hpp"

namespace wcam {

void AugmentConfig::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be >= 0");
  if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) throw ConfigError("drop_rate must be in [0,1]");
  spec.validate();
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(2 * static_cast<std::size_t>(radius) + 1, 0.0);
  if (radius == 0) {
    k[0] = 1.0;
    return k;
  }
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
    k[i + radius] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

namespace {

// Half-sample symmetric reflection: ... 2 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
int reflect(int i, int n) {
  const int period = 2 * n;
  i %= period;
  if (i < 0) i += period;
  return i < n ? i : period - 1 - i;
}

}  // namespace

Image gaussian_blur(const Image& image, double sigma) {
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  if (sigma == 0.0) return image;
  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int w = image.width();
  const int h = image.height();
  Image out(w, h, image.channels());
  std::vector<double> tmp(static_cast<std::size_t>(w) * h);
  for (int c = 0; c < image.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int t = -radius; t <= radius; ++t) acc += kernel[t + radius] * image.at(c, y, reflect(x + t, w));
        tmp[static_cast<std::size_t>(y) * w + x] = acc;
      }
    }
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int t = -radius; t <= radius; ++t) {
          acc += kernel[t + radius] * tmp[static_cast<std::size_t>(reflect(y + t, h)) * w + x];
        }
        out.at(c, y, x) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

std::vector<std::size_t> cancellation_set(std::size_t coefficient_count, double drop_rate, std::uint64_t seed,
                                          int channel) {
  if (!(drop_rate >= 0.0 && drop_rate <= 1.0)) throw ConfigError("drop_rate must be in [0,1]");
  const auto count = static_cast<std::size_t>(std::floor(drop_rate * static_cast<double>(coefficient_count)));
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(channel)};
  std::mt19937_64 rng(seq);
  // Partial Fisher-Yates: the first `count` slots are a uniform sample.
  std::vector<std::size_t> idx(coefficient_count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, coefficient_count - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(count);
  return idx;
}

Image wavelet_perturb(const Image& image, const AugmentConfig& config, PerturbationReport* report) {
  config.validate();
  CoefficientPlane plane = forward_plane(image, config.spec);
  const std::size_t per_channel = static_cast<std::size_t>(plane.width) * plane.height;
  if (report) {
    report->coefficients_per_channel = per_channel;
    report->cancelled_per_channel.assign(plane.channels, 0);
  }
  for (int c = 0; c < plane.channels; ++c) {
    auto coeffs = plane.channel(c);
    const auto chosen = cancellation_set(per_channel, config.drop_rate, config.seed, c);
    for (std::size_t i : chosen) coeffs[i] = 0.0;
    if (report) report->cancelled_per_channel[c] = chosen.size();
  }
  Image out = inverse_plane(plane);
  if (config.clamp) out.clamp01();
  return out;
}

Image blur_wp(const Image& image, const AugmentConfig& config, PerturbationReport* report) {
  config.validate();
  return wavelet_perturb(gaussian_blur(image, config.sigma), config, report);
}

Image crop(const Image& image, int top, int left, int size_h, int size_w) {
  if (top < 0 || left < 0 || size_h < 1 || size_w < 1 || top + size_h > image.height() ||
      left + size_w > image.width()) {
    throw DimensionError("crop window outside the image");
  }
  Image out(size_w, size_h, image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    for (int y = 0; y < size_h; ++y) {
      for (int x = 0; x < size_w; ++x) out.at(c, y, x) = image.at(c, top + y, left + x);
    }
  }
  return out;
}

Image center_crop(const Image& image, int size) {
  if (size > image.width() || size > image.height()) {
    throw DimensionError("center crop of " + std::to_string(size) + " exceeds the image");
  }
  return crop(image, (image.height() - size) / 2, (image.width() - size) / 2, size, size);
}

Image random_crop(const Image& image, int size, std::uint64_t seed) {
  if (size > image.width() || size > image.height()) throw DimensionError("random crop exceeds the image");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> ty(0, image.height() - size);
  std::uniform_int_distribution<int> tx(0, image.width() - size);
  const int top = ty(rng);
  const int left = tx(rng);
  return crop(image, top, left, size, size);
}

Image rotate90(const Image& image, int quarter_turns) {
  const int q = ((quarter_turns % 4) + 4) % 4;
  if (q == 0) return image;
  const int w = image.width();
  const int h = image.height();
  const bool swap = q % 2 == 1;
  Image out(swap ? h : w, swap ? w : h, image.channels());
  for (int c = 0; c < image.channels(); ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const float v = image.at(c, y, x);
        switch (q) {
          case 1:
            out.at(c, w - 1 - x, y) = v;
            break;
          case 2:
            out.at(c, h - 1 - y, w - 1 - x) = v;
            break;
          default:
            out.at(c, x, h - 1 - y) = v;
            break;
        }
      }
    }
  }
  return out;
}

Image random_rotate90(const Image& image, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return rotate90(image, static_cast<int>(rng() % 4));
}

Image normalize(const Image& image, const std::array<double, 3>& mean, const std::array<double, 3>& stddev) {
  Image out = image;
  for (int c = 0; c < image.channels(); ++c) {
    if (stddev[c] <= 0.0) throw ConfigError("normalize: standard deviation must be positive");
    for (float& v : out.plane(c)) v = static_cast<float>((v - mean[c]) / stddev[c]);
  }
  return out;
}

}  // namespace wcam

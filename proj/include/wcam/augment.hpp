// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wcam/image.hpp"
#include "wcam/wavelet.hpp"

namespace wcam {

struct AugmentConfig {
  double sigma = 2.0;
  /// Fraction of wavelet coefficients cancelled per channel.
  double drop_rate = 0.20;
  WaveletSpec spec{WaveletFamily::Haar, 3, Boundary::Periodic};
  std::uint64_t seed = 0;
  /// Clamp reconstructions to [0,1]. Only turned off to study the
  /// perturbation's expectation.
  bool clamp = true;

  void validate() const;
};

/// Separable Gaussian blur, kernel radius ceil(3 sigma), symmetric (edge
/// repeating) boundary. sigma == 0 returns the input unchanged.
Image gaussian_blur(const Image& image, double sigma);

/// Normalized 1-D kernel of length 2*ceil(3 sigma)+1.
std::vector<double> gaussian_kernel(double sigma);

struct PerturbationReport {
  std::size_t coefficients_per_channel = 0;
  std::vector<std::size_t> cancelled_per_channel;
};

/// Indices (into one channel's coefficient plane) cancelled for `channel`.
/// floor(drop_rate * count) distinct indices, uniform without replacement.
std::vector<std::size_t> cancellation_set(std::size_t coefficient_count, double drop_rate, std::uint64_t seed,
                                          int channel);

/// Zeroes a uniformly drawn floor(drop_rate * C) of the C wavelet
/// coefficients of each channel independently, reconstructs and clamps.
Image wavelet_perturb(const Image& image, const AugmentConfig& config, PerturbationReport* report = nullptr);

/// gaussian_blur followed by wavelet_perturb.
Image blur_wp(const Image& image, const AugmentConfig& config, PerturbationReport* report = nullptr);

// Training-pipeline helpers.

/// Crops a size x size window at (top, left).
Image crop(const Image& image, int top, int left, int size_h, int size_w);
Image center_crop(const Image& image, int size);
Image random_crop(const Image& image, int size, std::uint64_t seed);
/// Rotates by quarter_turns * 90 degrees counter-clockwise.
Image rotate90(const Image& image, int quarter_turns);
Image random_rotate90(const Image& image, std::uint64_t seed);

inline constexpr std::array<double, 3> kImagenetMean{0.485, 0.456, 0.406};
inline constexpr std::array<double, 3> kImagenetStd{0.229, 0.224, 0.225};

/// (x - mean[c]) / std[c] per channel; single-channel images use entry 0.
Image normalize(const Image& image, const std::array<double, 3>& mean = kImagenetMean,
                const std::array<double, 3>& stddev = kImagenetStd);

}  // namespace wcam

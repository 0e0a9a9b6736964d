// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "wcam/image.hpp"

namespace wcam::testing {

/// Uniform noise in [0,1).
inline Image random_image(int side, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  Image img(side, side, channels);
  for (float& v : img.data()) v = u(rng);
  return img;
}

/// Smooth sinusoidal texture plus a little noise.
inline Image texture_image(int side, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img(side, side, channels);
  for (int c = 0; c < channels; ++c) {
    const double fx = 1 + 6 * u(rng), fy = 1 + 6 * u(rng), ph = 6.28 * u(rng);
    for (int y = 0; y < side; ++y) {
      for (int x = 0; x < side; ++x) {
        const double v = 0.5 + 0.2 * std::sin(fx * x * 0.2 + ph) * std::cos(fy * y * 0.15) + 0.15 * (u(rng) - 0.5);
        img.at(c, y, x) = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return img;
}

/// Natural-image stand-in: 1/f spectrum built by summing random sinusoids
/// whose amplitude falls with frequency, plus a few hard-edged rectangles
/// (roofs, roads) and mild sensor noise.
inline Image natural_image(int side, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.01);
  const double two_pi = 6.283185307179586;
  Image img(side, side, channels);
  struct Wave {
    double kx, ky, phase, amp;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < 48; ++i) {
    const double f = 1.0 + 30.0 * u(rng) * u(rng);
    const double theta = two_pi * u(rng);
    waves.push_back({f * std::cos(theta) / side, f * std::sin(theta) / side, two_pi * u(rng), 0.18 / f});
  }
  struct Box {
    int y0, x0, y1, x1;
    double level;
  };
  std::vector<Box> boxes;
  for (int i = 0; i < 4; ++i) {
    const int y0 = static_cast<int>(u(rng) * side * 0.8), x0 = static_cast<int>(u(rng) * side * 0.8);
    const int h = 4 + static_cast<int>(u(rng) * side * 0.3), w = 4 + static_cast<int>(u(rng) * side * 0.3);
    boxes.push_back({y0, x0, std::min(side, y0 + h), std::min(side, x0 + w), 0.2 + 0.6 * u(rng)});
  }
  for (int c = 0; c < channels; ++c) {
    const double tint = 0.9 + 0.2 * u(rng);
    for (int y = 0; y < side; ++y) {
      for (int x = 0; x < side; ++x) {
        double v = 0.45;
        for (const auto& w : waves) v += w.amp * std::sin(two_pi * (w.kx * x + w.ky * y) + w.phase);
        for (const auto& b : boxes) {
          if (y >= b.y0 && y < b.y1 && x >= b.x0 && x < b.x1) v = 0.5 * v + 0.5 * b.level;
        }
        v = v * tint + noise(rng);
        img.at(c, y, x) = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return img;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("wcam_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace wcam::testing

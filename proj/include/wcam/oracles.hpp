// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

// Slow, direct reference computations used to check the library. Nothing in
// here calls into the production transform, sequence or estimator code.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace wcam::oracle {

/// Row-major single-channel grid.
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  Grid() = default;
  Grid(int w, int h) : width(w), height(h), v(static_cast<std::size_t>(w) * h, 0.0) {}
  double& at(int y, int x) { return v[static_cast<std::size_t>(y) * width + x]; }
  double at(int y, int x) const { return v[static_cast<std::size_t>(y) * width + x]; }
};

/// Approximation then (horizontal, vertical, diagonal) detail bands.
struct Subbands {
  Grid approximation;
  Grid horizontal;  // low-pass along x, high-pass along y
  Grid vertical;    // high-pass along x, low-pass along y
  Grid diagonal;
};

std::vector<double> haar_taps();
std::vector<double> db2_taps();

/// One analysis level by direct 2-D convolution with the four separable
/// kernels followed by factor-two downsampling, periodic wrap.
Subbands convolve_downsample(const Grid& in, const std::vector<double>& low_taps);

/// Multilevel analysis by iterating convolve_downsample on the approximation.
/// Element j-1 holds level j.
std::vector<Subbands> multilevel(const Grid& in, const std::vector<double>& low_taps, int levels);

enum class Band { Approximation, Horizontal, Vertical, Diagonal };

/// Image synthesized from a single unit coefficient of a one-level
/// decomposition, by upsampling and filtering.
Grid synthesis_atom(int width, int height, const std::vector<double>& low_taps, Band band, int y, int x);

/// Dense 2-D Gaussian convolution with a full (2r+1)^2 kernel and
/// half-sample symmetric boundary.
Grid dense_gaussian_blur(const Grid& in, double sigma);

// Sensitivity ---------------------------------------------------------------

double ishigami(double x1, double x2, double x3, double a = 7.0, double b = 0.1);

struct Indices {
  std::vector<double> first;
  std::vector<double> total;
};

/// Closed-form Ishigami indices for inputs uniform on [-pi, pi].
Indices ishigami_analytic(double a = 7.0, double b = 0.1);

/// Double-loop Monte-Carlo estimate of first-order and total Sobol indices of
/// f over U[0,1]^k with pseudo-random sampling: Var(E[f|X_i]) and
/// E[Var(f|X_~i)] computed from `outer` conditioning draws of `inner`
/// samples each.
Indices nested_monte_carlo(const std::function<double(std::span<const double>)>& f, int k, int outer, int inner,
                           std::uint64_t seed);

/// Warnock's closed form for the L2 star discrepancy of points in [0,1]^d.
double l2_star_discrepancy(const std::vector<std::vector<double>>& points);

}  // namespace wcam::oracle

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace wcam::oracle {

std::vector<double> haar_taps() { return {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2}; }

std::vector<double> db2_taps() {
  const double s3 = std::sqrt(3.0);
  const double n = 4.0 * std::numbers::sqrt2;
  return {(1.0 + s3) / n, (3.0 + s3) / n, (3.0 - s3) / n, (1.0 - s3) / n};
}

namespace {

std::vector<double> high_from_low(const std::vector<double>& g) {
  const std::size_t n = g.size();
  std::vector<double> h(n);
  for (std::size_t k = 0; k < n; ++k) h[k] = ((k & 1) ? -1.0 : 1.0) * g[n - 1 - k];
  return h;
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

// out(n, m) = sum_{p,q} ky[p] kx[q] in((2n+p) mod h, (2m+q) mod w)
Grid convolve_pair(const Grid& in, const std::vector<double>& ky, const std::vector<double>& kx) {
  Grid out(in.width / 2, in.height / 2);
  for (int n = 0; n < out.height; ++n) {
    for (int m = 0; m < out.width; ++m) {
      double acc = 0.0;
      for (std::size_t p = 0; p < ky.size(); ++p) {
        for (std::size_t q = 0; q < kx.size(); ++q) {
          acc += ky[p] * kx[q] * in.at(wrap(2 * n + static_cast<int>(p), in.height),
                                       wrap(2 * m + static_cast<int>(q), in.width));
        }
      }
      out.at(n, m) = acc;
    }
  }
  return out;
}

}  // namespace

Subbands convolve_downsample(const Grid& in, const std::vector<double>& low_taps) {
  const auto high = high_from_low(low_taps);
  Subbands s;
  s.approximation = convolve_pair(in, low_taps, low_taps);
  s.horizontal = convolve_pair(in, high, low_taps);
  s.vertical = convolve_pair(in, low_taps, high);
  s.diagonal = convolve_pair(in, high, high);
  return s;
}

std::vector<Subbands> multilevel(const Grid& in, const std::vector<double>& low_taps, int levels) {
  std::vector<Subbands> out;
  Grid current = in;
  for (int j = 0; j < levels; ++j) {
    out.push_back(convolve_downsample(current, low_taps));
    current = out.back().approximation;
  }
  return out;
}

Grid synthesis_atom(int width, int height, const std::vector<double>& low_taps, Band band, int y, int x) {
  const auto high = high_from_low(low_taps);
  const auto& ky = (band == Band::Horizontal || band == Band::Diagonal) ? high : low_taps;
  const auto& kx = (band == Band::Vertical || band == Band::Diagonal) ? high : low_taps;
  // Upsample the unit impulse at (y, x) to (2y, 2x) and filter with the
  // time-reversed synthesis kernels of an orthonormal bank.
  Grid out(width, height);
  for (std::size_t p = 0; p < ky.size(); ++p) {
    for (std::size_t q = 0; q < kx.size(); ++q) {
      out.at(wrap(2 * y + static_cast<int>(p), height), wrap(2 * x + static_cast<int>(q), width)) += ky[p] * kx[q];
    }
  }
  return out;
}

Grid dense_gaussian_blur(const Grid& in, double sigma) {
  if (sigma == 0.0) return in;
  const int r = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel((2 * r + 1) * (2 * r + 1));
  double sum = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      kernel[(dy + r) * (2 * r + 1) + (dx + r)] = v;
      sum += v;
    }
  }
  auto mirror = [](int i, int n) {
    while (i < 0 || i >= n) i = i < 0 ? -i - 1 : 2 * n - i - 1;
    return i;
  };
  Grid out(in.width, in.height);
  for (int y = 0; y < in.height; ++y) {
    for (int x = 0; x < in.width; ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          acc += kernel[(dy + r) * (2 * r + 1) + (dx + r)] * in.at(mirror(y + dy, in.height), mirror(x + dx, in.width));
        }
      }
      out.at(y, x) = acc / sum;
    }
  }
  return out;
}

double ishigami(double x1, double x2, double x3, double a, double b) {
  return std::sin(x1) + a * std::sin(x2) * std::sin(x2) + b * std::pow(x3, 4) * std::sin(x1);
}

Indices ishigami_analytic(double a, double b) {
  const double pi = std::numbers::pi;
  const double v1 = 0.5 * std::pow(1.0 + b * std::pow(pi, 4) / 5.0, 2);
  const double v2 = a * a / 8.0;
  const double v13 = b * b * std::pow(pi, 8) * (1.0 / 18.0 - 1.0 / 50.0);
  const double v = v1 + v2 + v13;
  return {{v1 / v, v2 / v, 0.0}, {(v1 + v13) / v, v2 / v, v13 / v}};
}

Indices nested_monte_carlo(const std::function<double(std::span<const double>)>& f, int k, int outer, int inner,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(k);

  // Overall variance from independent draws.
  const int total_draws = outer * inner;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < total_draws; ++i) {
    for (auto& xi : x) xi = u(rng);
    const double y = f(x);
    const double d = y - mean;
    mean += d / (i + 1);
    m2 += d * (y - mean);
  }
  const double variance = m2 / (total_draws - 1);

  Indices out;
  out.first.resize(k);
  out.total.resize(k);
  std::vector<double> ys(inner);
  for (int var = 0; var < k; ++var) {
    // First order: fix X_var, average over the rest.
    std::vector<double> cond_means(outer);
    double mean_inner_var = 0.0;
    for (int o = 0; o < outer; ++o) {
      const double fixed = u(rng);
      double s = 0.0;
      for (int i = 0; i < inner; ++i) {
        for (auto& xi : x) xi = u(rng);
        x[var] = fixed;
        ys[i] = f(x);
        s += ys[i];
      }
      const double m = s / inner;
      double ss = 0.0;
      for (double y : ys) ss += (y - m) * (y - m);
      cond_means[o] = m;
      mean_inner_var += ss / (inner - 1);
    }
    mean_inner_var /= outer;
    double mm = 0.0;
    for (double m : cond_means) mm += m;
    mm /= outer;
    double var_of_means = 0.0;
    for (double m : cond_means) var_of_means += (m - mm) * (m - mm);
    var_of_means /= (outer - 1);
    // Remove the inner-sampling noise carried by each conditional mean.
    out.first[var] = (var_of_means - mean_inner_var / inner) / variance;

    // Total: fix everything but X_var, take the variance over X_var.
    double expected_cond_var = 0.0;
    std::vector<double> fixed(k);
    for (int o = 0; o < outer; ++o) {
      for (auto& fi : fixed) fi = u(rng);
      double s = 0.0;
      for (int i = 0; i < inner; ++i) {
        x = fixed;
        x[var] = u(rng);
        ys[i] = f(x);
        s += ys[i];
      }
      const double m = s / inner;
      double ss = 0.0;
      for (double y : ys) ss += (y - m) * (y - m);
      expected_cond_var += ss / (inner - 1);
    }
    out.total[var] = expected_cond_var / outer / variance;
  }
  return out;
}

double l2_star_discrepancy(const std::vector<std::vector<double>>& points) {
  const auto n = static_cast<double>(points.size());
  if (points.empty()) return 0.0;
  const auto d = static_cast<int>(points.front().size());
  double term2 = 0.0;
  for (const auto& p : points) {
    double prod = 1.0;
    for (double v : p) prod *= (1.0 - v * v);
    term2 += prod;
  }
  double term3 = 0.0;
  for (const auto& p : points) {
    for (const auto& q : points) {
      double prod = 1.0;
      for (int i = 0; i < d; ++i) prod *= 1.0 - std::max(p[i], q[i]);
      term3 += prod;
    }
  }
  const double d2 = std::pow(3.0, -d) - std::pow(2.0, 1 - d) / n * term2 + term3 / (n * n);
  return std::sqrt(std::max(d2, 0.0));
}

}  // namespace wcam::oracle

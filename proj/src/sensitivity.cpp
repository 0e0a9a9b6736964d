// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcam/error.hpp"

namespace wcam {

SobolDesign::SobolDesign(Matrix a, Matrix b) : a_(std::move(a)), b_(std::move(b)) {
  if (a_.rows != b_.rows || a_.cols != b_.cols) throw LengthMismatch("design matrices A and B differ in shape");
}

void SobolDesign::c_row(int k, int j, std::span<double> out) const {
  const int K = features();
  if (static_cast<int>(out.size()) != K) throw LengthMismatch("c_row: output length must equal K");
  std::copy_n(a_.data.begin() + static_cast<std::ptrdiff_t>(j) * K, K, out.begin());
  out[k] = b_(j, k);
}

void SobolDesign::evaluation_row(std::size_t index, std::span<double> out) const {
  const auto n = static_cast<std::size_t>(samples());
  const int K = features();
  if (static_cast<int>(out.size()) != K) throw LengthMismatch("evaluation_row: output length must equal K");
  if (index >= evaluation_count()) throw DimensionError("evaluation_row: index out of range");
  if (index < n) {
    std::copy_n(a_.data.begin() + static_cast<std::ptrdiff_t>(index) * K, K, out.begin());
  } else if (index < 2 * n) {
    std::copy_n(b_.data.begin() + static_cast<std::ptrdiff_t>(index - n) * K, K, out.begin());
  } else {
    const std::size_t r = index - 2 * n;
    c_row(static_cast<int>(r / n), static_cast<int>(r % n), out);
  }
}

SobolDesign build_design(int n, int k, std::uint64_t seed, const SobolOptions& options) {
  if (n < 2) throw ConfigError("build_design: N must be >= 2");
  if (k < 1) throw ConfigError("build_design: K must be >= 1");
  const Matrix seq = sobol_sequence(n, 2 * k, seed, options);
  Matrix a(n, k), b(n, k);
  for (int j = 0; j < n; ++j) {
    for (int d = 0; d < k; ++d) {
      a(j, d) = seq(j, d);
      b(j, d) = seq(j, k + d);
    }
  }
  return SobolDesign(std::move(a), std::move(b));
}

DesignScores DesignScores::from_design_order(std::span<const double> scores, int n, int k) {
  const auto expected = static_cast<std::size_t>(n) * (k + 2);
  if (scores.size() != expected) {
    throw LengthMismatch("expected " + std::to_string(expected) + " design scores, got " +
                         std::to_string(scores.size()));
  }
  DesignScores out;
  out.a.assign(scores.begin(), scores.begin() + n);
  out.b.assign(scores.begin() + n, scores.begin() + 2 * n);
  out.c = Matrix(k, n);
  std::copy(scores.begin() + 2 * n, scores.end(), out.c.data.begin());
  return out;
}

namespace {

void validate(const DesignScores& s) {
  const int n = s.samples();
  if (n < 2) throw LengthMismatch("Jansen estimation needs N >= 2");
  if (static_cast<int>(s.b.size()) != n || s.c.cols != n || s.c.rows < 1 ||
      s.c.data.size() != static_cast<std::size_t>(s.c.rows) * n) {
    throw LengthMismatch("design score dimensions are inconsistent");
  }
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(s.a.begin(), s.a.end(), finite) || !std::all_of(s.b.begin(), s.b.end(), finite) ||
      !std::all_of(s.c.data.begin(), s.c.data.end(), finite)) {
    throw NonFiniteInput("design scores contain non-finite values");
  }
}

struct Moments {
  double mean;
  double variance;
};

Moments moments_of_a(const DesignScores& s) {
  const int n = s.samples();
  double sum = 0.0;
  for (double v : s.a) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : s.a) ss += (v - mean) * (v - mean);
  const double variance = ss / (n - 1);
  if (!(variance >= kDegenerateVariance)) throw DegenerateVariance(mean, variance);
  return {mean, variance};
}

// (1/2N) sum_j (ref_j - C^(k)_j)^2 for every k.
std::vector<double> half_mean_square(const std::vector<double>& ref, const Matrix& c) {
  const int n = c.cols;
  std::vector<double> out(c.rows);
  for (int k = 0; k < c.rows; ++k) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double d = ref[j] - c(k, j);
      acc += d * d;
    }
    out[k] = acc / (2.0 * n);
  }
  return out;
}

}  // namespace

std::vector<double> jansen_first(const DesignScores& scores) {
  validate(scores);
  const Moments m = moments_of_a(scores);
  std::vector<double> first = half_mean_square(scores.b, scores.c);
  for (double& v : first) v = (m.variance - v) / m.variance;
  return first;
}

SensitivityEstimate jansen_total(const DesignScores& scores) {
  validate(scores);
  const Moments m = moments_of_a(scores);
  SensitivityEstimate est;
  est.f_empty = m.mean;
  est.variance = m.variance;
  est.total = half_mean_square(scores.a, scores.c);
  for (double& v : est.total) v /= m.variance;
  est.first = jansen_first(scores);
  return est;
}

}  // namespace wcam

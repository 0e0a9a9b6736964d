// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wcam/sobol.hpp"

namespace wcam {

/// Variance below which sensitivity indices are treated as undefined.
inline constexpr double kDegenerateVariance = 1e-12;

/// Quasi-Monte-Carlo design for Jansen estimation: two N x K matrices A and
/// B taken from dimensions [0, K) and [K, 2K) of one Sobol sequence, plus
/// the K column-swapped matrices C^(k) (A with column k taken from B).
///
/// Evaluation rows are numbered 0 .. N(K+2)-1 in the order
/// A rows, B rows, C^(0) rows, ..., C^(K-1) rows.
class SobolDesign {
 public:
  SobolDesign(Matrix a, Matrix b);

  int samples() const noexcept { return a_.rows; }
  int features() const noexcept { return a_.cols; }
  std::size_t evaluation_count() const noexcept {
    return static_cast<std::size_t>(samples()) * (features() + 2);
  }

  const Matrix& a() const noexcept { return a_; }
  const Matrix& b() const noexcept { return b_; }

  /// Row j of C^(k) written into `out` (length K).
  void c_row(int k, int j, std::span<double> out) const;
  /// Evaluation row `index` in design order written into `out`.
  void evaluation_row(std::size_t index, std::span<double> out) const;

 private:
  Matrix a_;
  Matrix b_;
};

SobolDesign build_design(int n, int k, std::uint64_t seed, const SobolOptions& options = {});

/// Model outputs on a design. c is K x N: c(k, j) = f(C_j^(k)).
struct DesignScores {
  std::vector<double> a;
  std::vector<double> b;
  Matrix c;

  int samples() const noexcept { return static_cast<int>(a.size()); }
  int features() const noexcept { return c.rows; }

  /// Regroups scores listed in design order.
  static DesignScores from_design_order(std::span<const double> scores, int n, int k);
};

struct SensitivityEstimate {
  std::vector<double> total;
  std::vector<double> first;
  double f_empty = 0.0;
  double variance = 0.0;
};

/// Jansen estimators. Total indices are
///   S_Tk = (1/2N) sum_j (f(A_j) - f(C_j^(k)))^2 / V
/// and first-order indices
///   S_k = (V - (1/2N) sum_j (f(B_j) - f(C_j^(k)))^2) / V
/// with V the Bessel-corrected variance of f(A). First-order values may be
/// slightly negative and are not clipped.
///
/// Throws DegenerateVariance when V < kDegenerateVariance, LengthMismatch on
/// inconsistent shapes, NonFiniteInput for non-finite scores.
SensitivityEstimate jansen_total(const DesignScores& scores);
std::vector<double> jansen_first(const DesignScores& scores);

}  // namespace wcam

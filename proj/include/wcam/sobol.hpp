// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace wcam {

/// Dense row-major matrix of doubles.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}
  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Primitive polynomials and initial direction numbers for the Sobol
/// sequence (Joe-Kuo 6.21201 table, first 1024 dimensions).
class DirectionTable {
 public:
  static const DirectionTable& joe_kuo();

  /// Test hook: every dimension collapses onto the first one, so all
  /// coordinates of a point are equal. Used to prove that the self-test
  /// detects a broken table.
  static DirectionTable corrupted();

  int max_dimension() const noexcept { return static_cast<int>(directions_.size()); }
  /// 32 direction numbers for dimension `d`, scaled to the top bit.
  const std::vector<std::uint32_t>& directions(int d) const { return directions_.at(d); }

 private:
  std::vector<std::vector<std::uint32_t>> directions_;
};

enum class Scrambling { None, DigitalShift };

struct SobolOptions {
  Scrambling scrambling = Scrambling::None;
  const DirectionTable* table = nullptr;  // null: the shipped table
};

/// First n points (after the origin) of the unscrambled Sobol sequence in
/// `dim` dimensions, Gray-code order. With DigitalShift, every coordinate is
/// XOR-ed with a per-dimension 32-bit shift drawn from `seed`.
///
/// Throws UnsupportedDimension when dim exceeds the direction table and
/// ConfigError when n < 1 or n >= 2^32.
Matrix sobol_sequence(int n, int dim, std::uint64_t seed, const SobolOptions& options = {});

}  // namespace wcam

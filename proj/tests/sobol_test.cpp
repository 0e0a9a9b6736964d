// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/sobol.hpp"

#include <gtest/gtest.h>

#include <random>

#include "wcam/error.hpp"
#include "wcam/oracles.hpp"

namespace wcam {
namespace {

// Unscrambled points 1..8 of the 8-dimensional sequence, as produced by an
// independent Sobol generator with the same direction numbers.
const double kReference[8][8] = {
    {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5},
    {0.75, 0.25, 0.25, 0.25, 0.75, 0.75, 0.25, 0.75},
    {0.25, 0.75, 0.75, 0.75, 0.25, 0.25, 0.75, 0.25},
    {0.375, 0.375, 0.625, 0.875, 0.375, 0.125, 0.375, 0.875},
    {0.875, 0.875, 0.125, 0.375, 0.875, 0.625, 0.875, 0.375},
    {0.625, 0.125, 0.875, 0.625, 0.625, 0.875, 0.125, 0.125},
    {0.125, 0.625, 0.375, 0.125, 0.125, 0.375, 0.625, 0.625},
    {0.1875, 0.3125, 0.9375, 0.4375, 0.5625, 0.3125, 0.4375, 0.9375}};

TEST(SobolSequence, FirstPointIsCentre) {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const Matrix m = sobol_sequence(1, 3, seed);
    ASSERT_EQ(m.rows, 1);
    ASSERT_EQ(m.cols, 3);
    for (int d = 0; d < 3; ++d) EXPECT_EQ(m(0, d), 0.5);
  }
}

TEST(SobolSequence, MatchesReferenceGenerator) {
  const Matrix m = sobol_sequence(8, 8, 0);
  for (int i = 0; i < 8; ++i)
    for (int d = 0; d < 8; ++d) EXPECT_EQ(m(i, d), kReference[i][d]) << "point " << i << " dim " << d;
}

TEST(SobolSequence, MatchesReferenceInHighDimensions) {
  const Matrix m = sobol_sequence(1023, 1024, 0);
  const int dims[] = {0, 1, 2, 500, 1023};
  const double row999[] = {0.2197265625, 0.0966796875, 0.5185546875, 0.7255859375, 0.7138671875};
  const double row1022[] = {0.0009765625, 0.7529296875, 0.6123046875, 0.3818359375, 0.9951171875};
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(m(999, dims[i]), row999[i]);
    EXPECT_EQ(m(1022, dims[i]), row1022[i]);
  }
  const double row3_d125[] = {0.375, 0.125, 0.625, 0.125, 0.125};
  for (int i = 0; i < 5; ++i) EXPECT_EQ(m(3, 125 + i), row3_d125[i]);
}

TEST(SobolSequence, EntriesInHalfOpenUnitInterval) {
  for (auto scrambling : {Scrambling::None, Scrambling::DigitalShift}) {
    const Matrix m = sobol_sequence(2048, 16, 5, SobolOptions{scrambling});
    for (double v : m.data) {
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
  }
}

TEST(SobolSequence, ColumnMeansNearHalf) {
  const Matrix m = sobol_sequence(4096, 32, 0);
  for (int d = 0; d < m.cols; ++d) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += m(i, d);
    EXPECT_NEAR(s / m.rows, 0.5, 0.01) << "dim " << d;
  }
}

TEST(SobolSequence, DiscrepancyBelowPseudoRandom) {
  const int n = 1024, dim = 8;
  const Matrix m = sobol_sequence(n, dim, 0);
  std::vector<std::vector<double>> qmc(n, std::vector<double>(dim));
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < dim; ++d) qmc[i][d] = m(i, d);
  const double d_qmc = oracle::l2_star_discrepancy(qmc);

  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::vector<double>> mc(n, std::vector<double>(dim));
    for (auto& p : mc)
      for (double& v : p) v = u(rng);
    EXPECT_LT(d_qmc, oracle::l2_star_discrepancy(mc));
  }
}

TEST(SobolSequence, DeterministicForSeed) {
  const SobolOptions shifted{Scrambling::DigitalShift};
  EXPECT_EQ(sobol_sequence(64, 10, 3, shifted), sobol_sequence(64, 10, 3, shifted));
  EXPECT_NE(sobol_sequence(64, 10, 3, shifted), sobol_sequence(64, 10, 4, shifted));
  EXPECT_EQ(sobol_sequence(64, 10, 3), sobol_sequence(64, 10, 4));
}

TEST(SobolSequence, DigitalShiftPreservesStratification) {
  // Each dyadic interval of width 1/64 holds exactly one of the first 64
  // points of the base sequence plus the origin; a digital shift permutes
  // those intervals.
  const Matrix m = sobol_sequence(63, 4, 11, SobolOptions{Scrambling::DigitalShift});
  for (int d = 0; d < 4; ++d) {
    std::vector<int> hits(64, 0);
    for (int i = 0; i < 63; ++i) ++hits[static_cast<int>(m(i, d) * 64)];
    int empty = 0;
    for (int h : hits) {
      EXPECT_LE(h, 1);
      empty += h == 0;
    }
    EXPECT_EQ(empty, 1);
  }
}

TEST(SobolSequence, RejectsUnsupportedDimension) {
  EXPECT_THROW(sobol_sequence(4, 1025, 0), UnsupportedDimension);
  EXPECT_NO_THROW(sobol_sequence(4, 1024, 0));
  EXPECT_THROW(sobol_sequence(0, 4, 0), ConfigError);
}

TEST(SobolSequence, CorruptedTableCollapsesDimensions) {
  const DirectionTable broken = DirectionTable::corrupted();
  SobolOptions opts;
  opts.table = &broken;
  const Matrix m = sobol_sequence(16, 5, 0, opts);
  for (int i = 0; i < 16; ++i)
    for (int d = 1; d < 5; ++d) EXPECT_EQ(m(i, d), m(i, 0));
}

}  // namespace
}  // namespace wcam

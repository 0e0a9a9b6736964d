// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/sobol.hpp"

#include <bit>
#include <random>
#include <string>

#include "wcam/error.hpp"

namespace wcam {

namespace {

#include "sobol_directions.inc"

constexpr int kBits = 32;

std::vector<std::uint32_t> build_directions(int d) {
  std::vector<std::uint32_t> v(kBits);
  if (d == 0) {
    for (int j = 0; j < kBits; ++j) v[j] = 1u << (kBits - 1 - j);
    return v;
  }
  const unsigned poly = kPoly[d];
  const int degree = std::bit_width(poly) - 1;
  // m_j values, unshifted.
  std::vector<std::uint32_t> m(kBits);
  for (int j = 0; j < degree; ++j) m[j] = kInitial[d][j];
  for (int j = degree; j < kBits; ++j) {
    std::uint32_t next = m[j - degree] ^ (m[j - degree] << degree);
    for (int k = 1; k < degree; ++k) {
      if ((poly >> (degree - k)) & 1u) next ^= m[j - k] << k;
    }
    m[j] = next;
  }
  for (int j = 0; j < kBits; ++j) v[j] = m[j] << (kBits - 1 - j);
  return v;
}

}  // namespace

const DirectionTable& DirectionTable::joe_kuo() {
  static const DirectionTable table = [] {
    DirectionTable t;
    t.directions_.reserve(kDirectionDims);
    for (int d = 0; d < kDirectionDims; ++d) t.directions_.push_back(build_directions(d));
    return t;
  }();
  return table;
}

DirectionTable DirectionTable::corrupted() {
  DirectionTable t;
  t.directions_.assign(kDirectionDims, build_directions(0));
  return t;
}

Matrix sobol_sequence(int n, int dim, std::uint64_t seed, const SobolOptions& options) {
  const DirectionTable& table = options.table ? *options.table : DirectionTable::joe_kuo();
  if (n < 1) throw ConfigError("sobol_sequence: n must be >= 1");
  if (dim < 1) throw ConfigError("sobol_sequence: dim must be >= 1");
  if (dim > table.max_dimension()) {
    throw UnsupportedDimension("sobol_sequence: dimension " + std::to_string(dim) + " exceeds the " +
                               std::to_string(table.max_dimension()) + "-dimensional direction table");
  }

  std::vector<std::uint32_t> shift(dim, 0u);
  if (options.scrambling == Scrambling::DigitalShift) {
    std::mt19937_64 rng(seed);
    for (auto& s : shift) s = static_cast<std::uint32_t>(rng() >> 32);
  }

  Matrix out(n, dim);
  std::vector<std::uint32_t> state(dim, 0u);
  constexpr double kScale = 1.0 / 4294967296.0;  // 2^-32
  for (int i = 1; i <= n; ++i) {
    const int c = std::countr_zero(static_cast<unsigned>(i));
    for (int d = 0; d < dim; ++d) {
      state[d] ^= table.directions(d)[c];
      out(i - 1, d) = static_cast<double>(state[d] ^ shift[d]) * kScale;
    }
  }
  return out;
}

}  // namespace wcam

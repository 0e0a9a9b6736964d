// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/error.hpp"

#include <sstream>

namespace wcam {

namespace {
std::string degenerate_message(double f_empty, double variance) {
  std::ostringstream os;
  os << "score variance " << variance << " below degeneracy threshold; model indifferent to the input (mean score "
     << f_empty << ")";
  return os.str();
}
}  // namespace

DegenerateVariance::DegenerateVariance(double f_empty, double variance)
    : Error(degenerate_message(f_empty, variance)), f_empty_(f_empty), variance_(variance) {}

}  // namespace wcam

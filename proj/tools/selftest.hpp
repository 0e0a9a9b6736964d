// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace wcam::cli {

inline const std::vector<std::string> kSelftestGroups{"wavelet", "sensitivity", "wcam", "augment", "metrics"};

struct SelftestOptions {
  std::set<std::string> only;  // empty: every group
  bool corrupt_directions = false;
};

/// Runs the reference checks, printing one PASS/FAIL line each. Returns true
/// when every selected check passes.
bool run_selftest(const SelftestOptions& options, std::ostream& out);

}  // namespace wcam::cli

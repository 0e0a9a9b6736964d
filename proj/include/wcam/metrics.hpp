// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace wcam {

enum class Label { Pv, NoPv };

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + tn + fp + fn; }
  ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept;
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct Rates {
  double tpr = 0.0;
  double tnr = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
};

inline constexpr double kDefaultThreshold = 0.5;

/// score >= threshold counts as a positive prediction. Throws LengthMismatch
/// and NonFiniteInput.
ConfusionCounts confusion(std::span<const double> scores, std::span<const Label> labels,
                          double threshold = kDefaultThreshold);

/// 2tp / (2tp + fp + fn). Throws UndefinedMetric when tp + fp + fn == 0.
double f1(const ConfusionCounts& counts);

/// Throws UndefinedMetric when either class is empty.
Rates rates(const ConfusionCounts& counts);

// Manifest ---------------------------------------------------------------

struct ManifestEntry {
  std::string path;
  Label label = Label::NoPv;
  std::string provider;  // google, ign or other
  std::string installation_id;
  std::string test_set;
};

/// CSV with header path,label,provider,installation_id,test_set. Labels are
/// pv / no-pv. Quoted fields, extra commas, duplicate paths and unknown
/// labels or providers are rejected with ManifestError.
std::vector<ManifestEntry> parse_manifest(const std::string& csv_text);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

using ScoreTable = std::map<std::string, double>;

/// {"path": score, ...}
ScoreTable parse_scores(const nlohmann::json& doc);

struct ReportRow {
  std::string test_set;
  ConfusionCounts counts;
  double f1 = 0.0;
  Rates rates;
};

/// One row per test set, sorted by test set name. Throws MissingScores
/// (listing the paths) when manifest entries have no score. Metrics that
/// are undefined for a set (e.g. rates of an absent class) are NaN.
std::vector<ReportRow> disentangle_report(const std::vector<ManifestEntry>& manifest, const ScoreTable& scores,
                                          double threshold = kDefaultThreshold);

std::string report_csv(const std::vector<ReportRow>& rows);
/// Aligned table with two-decimal metrics.
std::string report_text(const std::vector<ReportRow>& rows);
nlohmann::json report_json(const std::vector<ReportRow>& rows);

// Probability shift -------------------------------------------------------

struct ScorePair {
  std::string installation_id;
  double source = 0.0;
  double target = 0.0;
};

inline constexpr int kShiftBins = 20;

struct ProbabilityShift {
  std::vector<double> deltas;  // target - source, input order
  std::array<std::uint64_t, kShiftBins> histogram{};  // uniform bins over [-1, 1]
  double mean_delta = 0.0;
  /// Fraction of pairs with source >= 0.5 and target < 0.5.
  double downward_crossing_fraction = 0.0;
};

/// Bin of a delta in [-1, 1]; 1 falls into the last bin.
int shift_bin(double delta);

ProbabilityShift probability_shift(std::span<const ScorePair> pairs);

/// Pairs positive entries of `source_provider` with positive entries of
/// `target_provider` sharing an installation_id. Throws UnpairedEntry when a
/// positive of either provider lacks its counterpart (unless skip_unpaired),
/// and MissingScores when a paired path has no score.
std::vector<ScorePair> pair_positives(const std::vector<ManifestEntry>& manifest, const ScoreTable& scores,
                                      const std::string& source_provider, const std::string& target_provider,
                                      bool skip_unpaired = false);

nlohmann::json shift_json(const ProbabilityShift& shift);

}  // namespace wcam

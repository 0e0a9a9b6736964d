// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "wcam/error.hpp"

namespace wcam {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) noexcept {
  tp += o.tp;
  tn += o.tn;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

ConfusionCounts confusion(std::span<const double> scores, std::span<const Label> labels, double threshold) {
  if (scores.size() != labels.size()) {
    throw LengthMismatch("confusion: " + std::to_string(scores.size()) + " scores for " +
                         std::to_string(labels.size()) + " labels");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) throw NonFiniteInput("confusion: non-finite score");
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] == Label::Pv;
    if (predicted && actual) {
      ++c.tp;
    } else if (predicted) {
      ++c.fp;
    } else if (actual) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

double f1(const ConfusionCounts& c) {
  const double denom = 2.0 * c.tp + c.fp + c.fn;
  if (denom == 0.0) throw UndefinedMetric("F1 is undefined without positives or predicted positives");
  return 2.0 * c.tp / denom;
}

Rates rates(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) throw UndefinedMetric("rates are undefined without positive samples");
  if (c.tn + c.fp == 0) throw UndefinedMetric("rates are undefined without negative samples");
  Rates r;
  r.tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  r.tnr = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  r.fnr = 1.0 - r.tpr;
  r.fpr = 1.0 - r.tnr;
  return r;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

Label parse_label(const std::string& s, std::size_t line_no) {
  if (s == "pv") return Label::Pv;
  if (s == "no-pv") return Label::NoPv;
  throw ManifestError("manifest line " + std::to_string(line_no) + ": label must be pv or no-pv, got '" + s + "'");
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(const std::string& csv_text) {
  static const std::vector<std::string> kHeader{"path", "label", "provider", "installation_id", "test_set"};
  static const std::set<std::string> kProviders{"google", "ign", "other"};
  std::istringstream is(csv_text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<ManifestEntry> out;
  std::set<std::string> paths;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (line.empty()) continue;
    if (line.find('"') != std::string::npos) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": quoted fields are not supported");
    }
    auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields != kHeader) throw ManifestError("manifest header must be path,label,provider,installation_id,test_set");
      header_seen = true;
      continue;
    }
    if (fields.size() != kHeader.size()) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": expected 5 fields, got " +
                          std::to_string(fields.size()) + " (paths containing commas are not allowed)");
    }
    ManifestEntry e;
    e.path = fields[0];
    e.label = parse_label(fields[1], line_no);
    e.provider = fields[2];
    e.installation_id = fields[3];
    e.test_set = fields[4];
    if (e.path.empty()) throw ManifestError("manifest line " + std::to_string(line_no) + ": empty path");
    if (!kProviders.count(e.provider)) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": unknown provider '" + e.provider + "'");
    }
    if (e.test_set.empty()) throw ManifestError("manifest line " + std::to_string(line_no) + ": empty test_set");
    if (!paths.insert(e.path).second) {
      throw ManifestError("manifest line " + std::to_string(line_no) + ": duplicate path '" + e.path + "'");
    }
    out.push_back(std::move(e));
  }
  if (!header_seen) throw ManifestError("manifest is empty");
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

ScoreTable parse_scores(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ManifestError("scores file must be a JSON object mapping path to score");
  ScoreTable table;
  for (const auto& [path, value] : doc.items()) {
    if (!value.is_number()) throw ManifestError("score for '" + path + "' is not a number");
    table[path] = value.get<double>();
  }
  return table;
}

std::vector<ReportRow> disentangle_report(const std::vector<ManifestEntry>& manifest, const ScoreTable& scores,
                                          double threshold) {
  std::vector<std::string> missing;
  std::map<std::string, ConfusionCounts> per_set;
  for (const auto& e : manifest) {
    const auto it = scores.find(e.path);
    if (it == scores.end()) {
      missing.push_back(e.path);
      continue;
    }
    const double s = it->second;
    const Label l = e.label;
    per_set[e.test_set] += confusion(std::span<const double>(&s, 1), std::span<const Label>(&l, 1), threshold);
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    std::string msg = "no score for " + std::to_string(missing.size()) + " manifest entries:";
    for (const auto& p : missing) msg += "\n  " + p;
    throw MissingScores(msg);
  }
  if (per_set.empty()) throw MissingScores("manifest has no entries to report on");
  std::vector<ReportRow> rows;
  for (const auto& [set, counts] : per_set) {
    ReportRow row;
    row.test_set = set;
    row.counts = counts;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.f1 = counts.tp + counts.fp + counts.fn > 0 ? f1(counts) : nan;
    const bool has_pos = counts.tp + counts.fn > 0;
    const bool has_neg = counts.tn + counts.fp > 0;
    row.rates.tpr = has_pos ? static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn) : nan;
    row.rates.fnr = has_pos ? 1.0 - row.rates.tpr : nan;
    row.rates.tnr = has_neg ? static_cast<double>(counts.tn) / static_cast<double>(counts.tn + counts.fp) : nan;
    row.rates.fpr = has_neg ? 1.0 - row.rates.tnr : nan;
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Undefined values print as an empty field (CSV) or "n/a" (text).
struct Cell {
  double v;
  const char* missing;
};

std::ostream& operator<<(std::ostream& os, Cell c) {
  if (std::isfinite(c.v)) return os << c.v;
  return os << c.missing;
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream os;
  os << "test_set,f1,tpr,tnr,fpr,fnr,tp,tn,fp,fn\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.test_set << ',' << Cell{r.f1, ""} << ',' << Cell{r.rates.tpr, ""} << ',' << Cell{r.rates.tnr, ""} << ','
       << Cell{r.rates.fpr, ""} << ',' << Cell{r.rates.fnr, ""} << ',' << r.counts.tp << ',' << r.counts.tn << ','
       << r.counts.fp << ',' << r.counts.fn << '\n';
  }
  return os.str();
}

std::string report_text(const std::vector<ReportRow>& rows) {
  std::size_t width = std::string("test set").size();
  for (const auto& r : rows) width = std::max(width, r.test_set.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "test set" << std::right << "  " << std::setw(6) << "F1"
     << std::setw(8) << "TPR" << std::setw(8) << "TNR" << std::setw(8) << "FPR" << std::setw(8) << "FNR" << '\n';
  os << std::fixed << std::setprecision(2);
  for (const auto& r : rows) {
    os << std::left << std::setw(static_cast<int>(width)) << r.test_set << std::right << "  " << std::setw(6)
       << Cell{r.f1, "n/a"} << std::setw(8) << Cell{r.rates.tpr, "n/a"} << std::setw(8) << Cell{r.rates.tnr, "n/a"}
       << std::setw(8) << Cell{r.rates.fpr, "n/a"} << std::setw(8) << Cell{r.rates.fnr, "n/a"} << '\n';
  }
  return os.str();
}

namespace {

nlohmann::json or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

}  // namespace

nlohmann::json report_json(const std::vector<ReportRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"test_set", r.test_set},
                   {"f1", or_null(r.f1)},
                   {"tpr", or_null(r.rates.tpr)},
                   {"tnr", or_null(r.rates.tnr)},
                   {"fpr", or_null(r.rates.fpr)},
                   {"fnr", or_null(r.rates.fnr)},
                   {"tp", r.counts.tp},
                   {"tn", r.counts.tn},
                   {"fp", r.counts.fp},
                   {"fn", r.counts.fn}});
  }
  return out;
}

int shift_bin(double delta) {
  const double clamped = std::clamp(delta, -1.0, 1.0);
  const int bin = static_cast<int>(std::floor((clamped + 1.0) / 2.0 * kShiftBins));
  return std::min(bin, kShiftBins - 1);
}

ProbabilityShift probability_shift(std::span<const ScorePair> pairs) {
  ProbabilityShift out;
  out.deltas.reserve(pairs.size());
  double sum = 0.0;
  std::uint64_t crossings = 0;
  for (const auto& p : pairs) {
    if (!std::isfinite(p.source) || !std::isfinite(p.target)) throw NonFiniteInput("probability shift: non-finite score");
    const double d = p.target - p.source;
    out.deltas.push_back(d);
    ++out.histogram[shift_bin(d)];
    sum += d;
    if (p.source >= 0.5 && p.target < 0.5) ++crossings;
  }
  if (!pairs.empty()) {
    out.mean_delta = sum / static_cast<double>(pairs.size());
    out.downward_crossing_fraction = static_cast<double>(crossings) / static_cast<double>(pairs.size());
  }
  return out;
}

std::vector<ScorePair> pair_positives(const std::vector<ManifestEntry>& manifest, const ScoreTable& scores,
                                      const std::string& source_provider, const std::string& target_provider,
                                      bool skip_unpaired) {
  std::map<std::string, const ManifestEntry*> source, target;
  for (const auto& e : manifest) {
    if (e.label != Label::Pv) continue;
    std::map<std::string, const ManifestEntry*>* side = nullptr;
    if (e.provider == source_provider) {
      side = &source;
    } else if (e.provider == target_provider) {
      side = &target;
    } else {
      continue;
    }
    if (!side->emplace(e.installation_id, &e).second) {
      throw UnpairedEntry("installation '" + e.installation_id + "' has several " + e.provider + " positives");
    }
  }
  auto lookup = [&scores](const ManifestEntry& e) {
    const auto it = scores.find(e.path);
    if (it == scores.end()) throw MissingScores("no score for paired entry " + e.path);
    return it->second;
  };
  std::vector<ScorePair> pairs;
  for (const auto& [id, src] : source) {
    const auto it = target.find(id);
    if (it == target.end()) {
      if (skip_unpaired) continue;
      throw UnpairedEntry("positive " + src->path + " has no " + target_provider + " counterpart");
    }
    pairs.push_back({id, lookup(*src), lookup(*it->second)});
  }
  if (!skip_unpaired) {
    for (const auto& [id, tgt] : target) {
      if (!source.count(id)) throw UnpairedEntry("positive " + tgt->path + " has no " + source_provider + " counterpart");
    }
  }
  return pairs;
}

nlohmann::json shift_json(const ProbabilityShift& shift) {
  nlohmann::json bins = nlohmann::json::array();
  for (int b = 0; b < kShiftBins; ++b) {
    const double lo = -1.0 + 2.0 * b / kShiftBins;
    const double hi = -1.0 + 2.0 * (b + 1) / kShiftBins;
    bins.push_back({{"lo", lo}, {"hi", hi}, {"count", shift.histogram[b]}});
  }
  return {{"pairs", shift.deltas.size()},
          {"mean_delta", shift.mean_delta},
          {"downward_crossing_fraction", shift.downward_crossing_fraction},
          {"bins", bins},
          {"deltas", shift.deltas}};
}

}  // namespace wcam

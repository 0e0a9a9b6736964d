// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "wcam/augment.hpp"
#include "wcam/engine.hpp"
#include "wcam/metrics.hpp"
#include "wcam/model.hpp"
#include "wcam/oracles.hpp"
#include "wcam/result_json.hpp"
#include "wcam/sensitivity.hpp"
#include "wcam/wavelet.hpp"

namespace {

using namespace wcam;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass;
  std::string detail;
};

struct Criterion {
  std::string name;
  double budget_seconds;  // 0: no runtime limit
  std::function<Verdict()> check;
};

std::string fmt(double v, int precision = 3) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

oracle::Grid channel_grid(const Image& img, int c) {
  oracle::Grid g(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) g.at(y, x) = img.at(c, y, x);
  return g;
}

double level_detail_energy(const Image& img, int level) {
  const auto p = dwt2d(img, WaveletSpec{WaveletFamily::Haar, 3, Boundary::Periodic});
  double e = 0.0;
  for (const auto& ch : p.channels) {
    for (auto o : {Orientation::Horizontal, Orientation::Vertical, Orientation::Diagonal}) {
      for (double v : ch.details[level - 1].band(o).data) e += v * v;
    }
  }
  return e;
}

Verdict wavelet_round_trip() {
  double worst_err = 0.0, worst_energy = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Image img = testing::random_image(64, 3, 1000 + i);
    const WaveletPyramid p = dwt2d(img, WaveletSpec{});
    worst_err = std::max(worst_err, max_abs_diff(idwt2d(p), img));
    double e = 0.0;
    for (double v : pyramid_layout(p).data) e += v * v;
    worst_energy = std::max(worst_energy, std::abs(e - energy(img)) / energy(img));
  }
  return {worst_err <= 1e-6 && worst_energy <= 1e-6,
          "max reconstruction error " + fmt(worst_err) + ", max relative energy error " + fmt(worst_energy)};
}

Verdict dwt_oracle() {
  std::vector<Image> fixtures;
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      Image impulse(8, 8, 1);
      impulse.at(0, y, x) = 1.0f;
      fixtures.push_back(impulse);
    }
  }
  for (int i = 0; i < 16; ++i) fixtures.push_back(testing::random_image(8, 3, 50 + i));
  double worst = 0.0;
  for (const Image& img : fixtures) {
    const auto p = dwt2d(img, WaveletSpec{WaveletFamily::Haar, 1, Boundary::Periodic});
    for (int c = 0; c < img.channels(); ++c) {
      const auto ref = oracle::convolve_downsample(channel_grid(img, c), oracle::haar_taps());
      const auto& ch = p.channels[c];
      for (int y = 0; y < 4; ++y) {
        for (int x = 0; x < 4; ++x) {
          const double pairs[4][2] = {{ch.approximation.at(y, x), ref.approximation.at(y, x)},
                                      {ch.details[0].horizontal.at(y, x), ref.horizontal.at(y, x)},
                                      {ch.details[0].vertical.at(y, x), ref.vertical.at(y, x)},
                                      {ch.details[0].diagonal.at(y, x), ref.diagonal.at(y, x)}};
          for (const auto& pr : pairs) {
            worst = std::max<double>(worst, std::abs(static_cast<float>(pr[0]) - static_cast<float>(pr[1])));
          }
        }
      }
    }
  }
  return {worst <= 1e-6, std::to_string(fixtures.size()) + " fixtures, max deviation " + fmt(worst)};
}

Verdict ishigami() {
  const int n = 1024, k = 3;
  auto f = [](std::span<const double> u) {
    const double pi = std::numbers::pi;
    return oracle::ishigami(-pi + 2 * pi * u[0], -pi + 2 * pi * u[1], -pi + 2 * pi * u[2]);
  };
  const SobolDesign design = build_design(n, k, 0);
  std::vector<double> scores(design.evaluation_count());
  std::vector<double> row(k);
  for (std::size_t i = 0; i < scores.size(); ++i) {
    design.evaluation_row(i, row);
    scores[i] = f(row);
  }
  const auto est = jansen_total(DesignScores::from_design_order(scores, n, k));
  // 4000 x 250 = 10^6 model evaluations per conditioning pass.
  const auto ref = oracle::nested_monte_carlo(f, k, 4000, 250, 20240);
  double worst = 0.0;
  std::string values;
  for (int i = 0; i < k; ++i) {
    worst = std::max({worst, std::abs(est.total[i] - ref.total[i]), std::abs(est.first[i] - ref.first[i])});
    values += (i ? "; " : "") + std::string("S_T") + std::to_string(i + 1) + "=" + fmt(est.total[i]) + " vs " +
              fmt(ref.total[i]) + ", S" + std::to_string(i + 1) + "=" + fmt(est.first[i]) + " vs " + fmt(ref.first[i]);
  }
  return {worst <= 0.05, values + "; max gap " + fmt(worst)};
}

Verdict forward_budget() {
  const Image img = testing::texture_image(64, 3, 11);
  WcamConfig config;
  config.samples = 32;
  config.grid_size = 8;
  MeanPixelModel model;
  CountingModel counter(model);
  const WcamResult r = attribute(img, counter, config);
  return {counter.images_scored() == 2112 && r.evaluations == 2112,
          std::to_string(counter.images_scored()) + " images scored in " + std::to_string(counter.calls()) +
              " model calls"};
}

Verdict planted_recovery() {
  WcamConfig config;
  config.samples = 64;
  const Image img = testing::texture_image(64, 3, 3);
  const FeatureLayout layout = featurize(64, config);
  int recovered = 0;
  double min_tsi = 1e9;
  std::string misses;
  for (int target = 0; target < layout.feature_count(); ++target) {
    CellEnergyModel model(layout, target, config.spec, calibrate_alpha(img, layout, target, config.spec));
    const WcamResult r = attribute(img, model, config);
    if (std::getenv("WCAM_ACCEPTANCE_VERBOSE")) std::printf("  cell %d: TSI %.3f\n", target, r.tsi[target]);
    if (r.argmax_tsi() == target) {
      ++recovered;
      min_tsi = std::min(min_tsi, r.tsi[target]);
    } else {
      misses += " " + std::to_string(target) + "->" + std::to_string(r.argmax_tsi());
    }
  }
  std::string detail = std::to_string(recovered) + "/64 cells recovered, smallest planted TSI " + fmt(min_tsi);
  if (!misses.empty()) detail += ", misses:" + misses;
  return {recovered == 64, detail};
}

Verdict augmentation_counts() {
  std::string detail;
  bool ok = true;
  for (int i = 0; i < 5; ++i) {
    AugmentConfig cfg;
    cfg.seed = i;
    PerturbationReport report;
    wavelet_perturb(testing::random_image(64, 3, 70 + i), cfg, &report);
    for (auto n : report.cancelled_per_channel) ok = ok && n == 819;
    if (i == 0) {
      detail = std::to_string(report.cancelled_per_channel[0]) + "/" + std::to_string(report.coefficients_per_channel);
    }
  }
  AugmentConfig zero;
  zero.drop_rate = 0.0;
  const Image img = testing::random_image(64, 3, 99);
  const double err = max_abs_diff(wavelet_perturb(img, zero), img);
  ok = ok && err <= 1e-6;
  return {ok, detail + " coefficients cancelled per channel at rate 0.2; rate 0 deviation " + fmt(err)};
}

Verdict blur_selectivity() {
  int selective = 0;
  double worst_margin = 1e9;
  for (int i = 0; i < 20; ++i) {
    const Image img = testing::natural_image(64, 3, 300 + i);
    const Image blurred = gaussian_blur(img, 2.0);
    const double keep1 = level_detail_energy(blurred, 1) / level_detail_energy(img, 1);
    const double keep3 = level_detail_energy(blurred, 3) / level_detail_energy(img, 3);
    // Reduction factor 1/keep: level 1 must shrink strictly more.
    if (keep1 < keep3) ++selective;
    worst_margin = std::min(worst_margin, keep3 / keep1);
  }
  return {selective == 20, std::to_string(selective) + "/20 fixtures; smallest ratio of reduction factors (level 1 / " +
                               "level 3) " + fmt(worst_margin)};
}

Verdict published_arithmetic() {
  struct Row {
    const char* name;
    ConfusionCounts c;
    double f1;
  };
  const Row rows[] = {{"ERM", {566, 2321, 99, 1335}, 0.44},
                      {"AutoAugment", {598, 2318, 102, 1303}, 0.46},
                      {"AugMix", {624, 2318, 102, 1277}, 0.48},
                      {"RandAugment", {707, 2280, 140, 1194}, 0.51},
                      {"Blurring", {1855, 1196, 1224, 46}, 0.74},
                      {"Blurring+WP", {896, 2114, 306, 1005}, 0.58},
                      {"Oracle", {1818, 1992, 428, 83}, 0.88},
                      {"ERM (in-domain)", {1891, 2355, 36, 39}, 0.98},
                      {"Oracle (in-domain)", {1815, 2127, 264, 115}, 0.91}};
  int matched = 0;
  std::string mismatches;
  for (const auto& r : rows) {
    const double v = std::round(f1(r.c) * 100.0) / 100.0;
    if (std::abs(v - r.f1) < 1e-9) {
      ++matched;
    } else {
      mismatches += std::string(" ") + r.name + "=" + fmt(v);
    }
  }
  return {matched == 9, std::to_string(matched) + "/9 rows" + (mismatches.empty() ? "" : ", mismatches:" + mismatches)};
}

Verdict determinism() {
  const Image img = testing::texture_image(64, 3, 21);
  const FeatureLayout layout = featurize(64, WcamConfig{});
  bool same_bytes = true, same_tsi = true;
  for (auto scrambling : {Scrambling::None, Scrambling::DigitalShift}) {
    WcamConfig config;
    config.seed = 7;
    config.scrambling = scrambling;
    const double alpha = calibrate_alpha(img, layout, 30, config.spec);
    CellEnergyModel m1(layout, 30, config.spec, alpha);
    CellEnergyModel m2(layout, 30, config.spec, alpha);
    const WcamResult first = attribute(img, m1, config);
    const WcamResult second = attribute(img, m2, config);
    same_bytes = same_bytes && dump_result(first) == dump_result(second);
    WcamConfig threaded = config;
    threaded.jobs = 2;
    threaded.batch_size = 17;
    const WcamResult third = attribute(img, m1, threaded);
    same_tsi = same_tsi && third.tsi == first.tsi && third.first_order == first.first_order;
  }
  return {same_bytes && same_tsi, std::string("repeated runs ") + (same_bytes ? "byte-identical" : "DIFFER") +
                                      "; jobs/batch variation " + (same_tsi ? "bit-identical TSIs" : "CHANGES TSIs")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"wavelet round trip: 100 random 64x64x3 images, error <= 1e-6, Haar Parseval", 5.0, wavelet_round_trip},
      {"DWT oracle equivalence: Haar J=1 on 8x8 fixtures vs naive convolution", 0.0, dwt_oracle},
      {"Jansen correctness: Ishigami N=1024 K=3 within 0.05 of brute-force Monte Carlo", 10.0, ishigami},
      {"forward budget: N=32 K=64 performs exactly 2112 evaluations", 0.0, forward_budget},
      {"planted-feature recovery: 64/64 cells at N=64", 120.0, planted_recovery},
      {"augmentation counts: 819 per channel at rate 0.2, rate 0 identity", 0.0, augmentation_counts},
      {"blur scale-selectivity: sigma=2 on 20 natural-image fixtures", 0.0, blur_selectivity},
      {"published arithmetic: F1 for all 9 published count rows", 0.0, published_arithmetic},
      {"determinism: identical attribute runs give byte-identical JSON", 0.0, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    std::string timing = fmt(seconds, 3) + " s";
    if (c.budget_seconds > 0.0) {
      timing += " of " + fmt(c.budget_seconds, 3) + " s budget";
      if (seconds >= c.budget_seconds) {
        v.pass = false;
        v.detail += "; over the runtime budget";
      }
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << v.detail << "; " << timing << "]"
              << std::endl;
  }
  std::cout << (failures ? "acceptance FAILED: " + std::to_string(failures) + " of " : "acceptance passed: all ")
            << (failures ? std::to_string(criteria.size()) + " criteria failed" : std::to_string(criteria.size()) + " criteria")
            << std::endl;
  return failures ? 1 : 0;
}

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "wcam/augment.hpp"
#include "wcam/engine.hpp"
#include "wcam/error.hpp"
#include "wcam/metrics.hpp"
#include "wcam/oracles.hpp"
#include "wcam/sensitivity.hpp"
#include "wcam/wavelet.hpp"

namespace wcam::cli {

namespace {

struct Check {
  std::string group;
  std::string name;
  std::function<std::string()> run;  // empty string on success, else the reason
};

Image random_image(int side, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  Image img(side, side, channels);
  for (float& v : img.data()) v = u(rng);
  return img;
}

// Smooth texture with energy spread over every scale.
Image texture_image(int side, int channels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Image img(side, side, channels);
  for (int c = 0; c < channels; ++c) {
    const double fx = 1 + 6 * u(rng), fy = 1 + 6 * u(rng), ph = 6.28 * u(rng);
    for (int y = 0; y < side; ++y) {
      for (int x = 0; x < side; ++x) {
        const double v = 0.5 + 0.2 * std::sin(fx * x * 0.2 + ph) * std::cos(fy * y * 0.15) + 0.15 * (u(rng) - 0.5);
        img.at(c, y, x) = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return img;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<Check> build_checks(const SelftestOptions& options) {
  std::vector<Check> checks;

  checks.push_back({"wavelet", "round trip and Parseval on 64x64x3 images", [] {
                      const WaveletSpec spec{};
                      for (int i = 0; i < 20; ++i) {
                        const Image img = random_image(64, 3, 100 + i);
                        const WaveletPyramid p = dwt2d(img, spec);
                        const double err = max_abs_diff(idwt2d(p), img);
                        if (err > 1e-6) return "reconstruction error " + fmt(err);
                        const auto plane = pyramid_layout(p);
                        double e = 0.0;
                        for (double v : plane.data) e += v * v;
                        const double ref = energy(img);
                        if (std::abs(e - ref) > 1e-6 * ref) return "energy mismatch " + fmt(e) + " vs " + fmt(ref);
                      }
                      return std::string();
                    }});

  checks.push_back({"wavelet", "haar level-1 coefficients match direct convolution", [] {
                      const Image img = random_image(8, 1, 7);
                      oracle::Grid g(8, 8);
                      for (int y = 0; y < 8; ++y)
                        for (int x = 0; x < 8; ++x) g.at(y, x) = img.at(0, y, x);
                      const auto ref = oracle::convolve_downsample(g, oracle::haar_taps());
                      const auto p = dwt2d(img, WaveletSpec{WaveletFamily::Haar, 1, Boundary::Periodic});
                      const auto& ch = p.channels[0];
                      double worst = 0.0;
                      for (int y = 0; y < 4; ++y) {
                        for (int x = 0; x < 4; ++x) {
                          worst = std::max({worst, std::abs(ch.approximation.at(y, x) - ref.approximation.at(y, x)),
                                            std::abs(ch.details[0].horizontal.at(y, x) - ref.horizontal.at(y, x)),
                                            std::abs(ch.details[0].vertical.at(y, x) - ref.vertical.at(y, x)),
                                            std::abs(ch.details[0].diagonal.at(y, x) - ref.diagonal.at(y, x))});
                        }
                      }
                      return worst <= 1e-6 ? std::string() : "max deviation " + fmt(worst);
                    }});

  const bool corrupt = options.corrupt_directions;
  checks.push_back({"sensitivity", "Ishigami indices at N=1024 within 0.05 of brute force", [corrupt] {
                      static const DirectionTable broken = DirectionTable::corrupted();
                      SobolOptions so;
                      if (corrupt) so.table = &broken;
                      const int n = 1024, k = 3;
                      const SobolDesign design = build_design(n, k, 0, so);
                      auto f = [](std::span<const double> u) {
                        const double pi = std::numbers::pi;
                        return oracle::ishigami(-pi + 2 * pi * u[0], -pi + 2 * pi * u[1], -pi + 2 * pi * u[2]);
                      };
                      std::vector<double> scores(design.evaluation_count());
                      std::vector<double> row(k);
                      for (std::size_t i = 0; i < scores.size(); ++i) {
                        design.evaluation_row(i, row);
                        scores[i] = f(row);
                      }
                      SensitivityEstimate est;
                      try {
                        est = jansen_total(DesignScores::from_design_order(scores, n, k));
                      } catch (const DegenerateVariance& e) {
                        return std::string("degenerate variance: ") + e.what();
                      }
                      const auto ref = oracle::nested_monte_carlo(f, k, 4000, 250, 12345);
                      for (int i = 0; i < k; ++i) {
                        if (std::abs(est.total[i] - ref.total[i]) > 0.05) {
                          return "total index " + std::to_string(i + 1) + ": " + fmt(est.total[i]) + " vs " +
                                 fmt(ref.total[i]);
                        }
                        if (std::abs(est.first[i] - ref.first[i]) > 0.05) {
                          return "first-order index " + std::to_string(i + 1) + ": " + fmt(est.first[i]) + " vs " +
                                 fmt(ref.first[i]);
                        }
                      }
                      return std::string();
                    }});

  checks.push_back({"wcam", "planted cell recovered with N(K+2) forwards", [] {
                      WcamConfig config;
                      config.samples = 32;
                      const Image img = texture_image(64, 3, 3);
                      const FeatureLayout layout = featurize(64, config);
                      for (int target : {13, 0, 63}) {
                        CellEnergyModel model(layout, target, config.spec,
                                              calibrate_alpha(img, layout, target, config.spec));
                        CountingModel counter(model);
                        const WcamResult r = attribute(img, counter, config);
                        if (counter.images_scored() != 2112) {
                          return "scored " + std::to_string(counter.images_scored()) + " images, expected 2112";
                        }
                        if (r.argmax_tsi() != target) {
                          return "cell " + std::to_string(target) + " recovered as " + std::to_string(r.argmax_tsi());
                        }
                        if (r.tsi[target] <= 0.8) return "cell " + std::to_string(target) + " TSI " + fmt(r.tsi[target]);
                      }
                      return std::string();
                    }});

  checks.push_back({"augment", "20% wavelet perturbation cancels 819 of 4096 coefficients", [] {
                      const Image img = random_image(64, 3, 5);
                      AugmentConfig cfg;
                      PerturbationReport report;
                      wavelet_perturb(img, cfg, &report);
                      for (auto n : report.cancelled_per_channel) {
                        if (n != 819) return "cancelled " + std::to_string(n);
                      }
                      cfg.drop_rate = 0.0;
                      const double err = max_abs_diff(wavelet_perturb(img, cfg), img);
                      return err <= 1e-6 ? std::string() : "rate 0 deviates by " + fmt(err);
                    }});

  checks.push_back({"metrics", "F1 reproduces published count tables", [] {
                      struct Row {
                        ConfusionCounts c;
                        double f1;
                      };
                      const Row rows[] = {{{566, 2321, 99, 1335}, 0.44},  {{598, 2318, 102, 1303}, 0.46},
                                          {{624, 2318, 102, 1277}, 0.48}, {{707, 2280, 140, 1194}, 0.51},
                                          {{1855, 1196, 1224, 46}, 0.74}, {{896, 2114, 306, 1005}, 0.58},
                                          {{1818, 1992, 428, 83}, 0.88},  {{1891, 2355, 36, 39}, 0.98},
                                          {{1815, 2127, 264, 115}, 0.91}};
                      for (const auto& r : rows) {
                        const double v = std::round(f1(r.c) * 100.0) / 100.0;
                        if (std::abs(v - r.f1) > 1e-9) return "F1 " + fmt(v) + " expected " + fmt(r.f1);
                      }
                      return std::string();
                    }});
  return checks;
}

}  // namespace

bool run_selftest(const SelftestOptions& options, std::ostream& out) {
  bool ok = true;
  int ran = 0;
  for (const Check& check : build_checks(options)) {
    if (!options.only.empty() && !options.only.count(check.group)) continue;
    ++ran;
    std::string failure;
    try {
      failure = check.run();
    } catch (const std::exception& e) {
      failure = std::string("threw: ") + e.what();
    }
    if (failure.empty()) {
      out << "PASS [" << check.group << "] " << check.name << "\n";
    } else {
      ok = false;
      out << "FAIL [" << check.group << "] " << check.name << ": " << failure << "\n";
    }
  }
  out << (ok ? "selftest passed" : "selftest FAILED") << " (" << ran << " checks)\n";
  return ok;
}

}  // namespace wcam::cli

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/engine.hpp"

#include <algorithm>
#include <thread>

#include "wcam/error.hpp"
#include "wcam/io.hpp"
#include "wcam/sensitivity.hpp"

namespace wcam {

void WcamConfig::validate() const {
  spec.validate();
  if (grid_size < 1) throw ConfigError("grid_size must be >= 1");
  if (samples < 2) throw ConfigError("N (samples) must be >= 2");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

int WcamResult::argmax_tsi() const {
  if (tsi.empty()) return -1;
  return static_cast<int>(std::max_element(tsi.begin(), tsi.end()) - tsi.begin());
}

FeatureLayout featurize(int side, const WcamConfig& config) {
  return FeatureLayout(side, config.grid_size, config.spec.levels);
}

Image perturb_plane(const CoefficientPlane& plane, const FeatureLayout& layout, std::span<const double> mask,
                    bool clamp) {
  if (static_cast<int>(mask.size()) != layout.feature_count()) {
    throw DimensionError("mask length " + std::to_string(mask.size()) + " does not match K=" +
                         std::to_string(layout.feature_count()));
  }
  if (plane.width != layout.side() || plane.height != layout.side()) {
    throw DimensionError("coefficient plane does not match the feature layout");
  }
  CoefficientPlane masked = plane;
  for (int c = 0; c < masked.channels; ++c) {
    for (const Feature& f : layout.features()) {
      const double m = mask[f.id];
      if (m == 1.0) continue;
      for (int y = f.region.y0; y < f.region.y1; ++y) {
        double* row = &masked.at(c, y, 0);
        for (int x = f.region.x0; x < f.region.x1; ++x) row[x] *= m;
      }
    }
  }
  Image out = inverse_plane(masked);
  if (clamp) out.clamp01();
  return out;
}

Image perturb_reconstruct(const Image& image, const FeatureLayout& layout, std::span<const double> mask,
                          const WaveletSpec& spec, bool clamp) {
  return perturb_plane(forward_plane(image, spec), layout, mask, clamp);
}

namespace {

void reconstruct_rows(const CoefficientPlane& plane, const FeatureLayout& layout, const SobolDesign& design,
                      std::size_t first_row, std::span<Image> out, bool clamp, int jobs) {
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> mask(layout.feature_count());
    for (std::size_t i = begin; i < end; ++i) {
      design.evaluation_row(first_row + i, mask);
      out[i] = perturb_plane(plane, layout, mask, clamp);
    }
  };
  const std::size_t n = out.size();
  const auto workers = static_cast<std::size_t>(std::min<std::size_t>(jobs, n));
  if (workers <= 1) {
    work(0, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin < end) pool.emplace_back(work, begin, end);
  }
}

}  // namespace

WcamResult attribute(const Image& image, ScoreFn& model, const WcamConfig& config) {
  config.validate();
  if (image.width() != image.height()) {
    throw DimensionError("attribution needs a square image, got " + std::to_string(image.width()) + "x" +
                         std::to_string(image.height()));
  }
  const FeatureLayout layout = featurize(image.width(), config);
  const SobolDesign design =
      build_design(config.samples, layout.feature_count(), config.seed, SobolOptions{config.scrambling, nullptr});
  const CoefficientPlane plane = forward_plane(image, config.spec);

  std::size_t batch = static_cast<std::size_t>(config.batch_size);
  if (model.max_batch() != 0) batch = std::min(batch, model.max_batch());

  const std::size_t total = design.evaluation_count();
  std::vector<double> scores;
  scores.reserve(total);
  std::vector<Image> images;
  for (std::size_t start = 0; start < total; start += batch) {
    const std::size_t count = std::min(batch, total - start);
    images.assign(count, Image{});
    reconstruct_rows(plane, layout, design, start, images, config.clamp_reconstruction, config.jobs);
    const std::vector<double> s = score_batch(model, images);
    scores.insert(scores.end(), s.begin(), s.end());
  }
  if (scores.size() != total) throw ModelError("attribution collected an unexpected number of scores");

  const DesignScores grouped = DesignScores::from_design_order(scores, design.samples(), design.features());
  const SensitivityEstimate est = jansen_total(grouped);

  WcamResult result;
  result.config = config;
  result.layout = layout;
  result.tsi = est.total;
  result.first_order = est.first;
  result.f_empty = est.f_empty;
  result.variance = est.variance;
  result.model_id = model.model_id();
  result.image_digest = image_digest(image);
  result.evaluations = scores.size();
  return result;
}

std::vector<double> project_spatial(const WcamResult& result, bool normalize) {
  const FeatureLayout& layout = result.layout;
  const int side = layout.side();
  std::vector<double> map(static_cast<std::size_t>(side) * side, 0.0);
  for (int k = 0; k < layout.feature_count(); ++k) {
    const double v = result.tsi.at(k);
    if (v == 0.0) continue;
    const auto mask = layout.footprint_mask(k);
    for (std::size_t i = 0; i < map.size(); ++i) {
      if (mask[i]) map[i] += v;
    }
  }
  if (normalize) {
    const double peak = *std::max_element(map.begin(), map.end());
    if (peak > 0.0) {
      for (double& v : map) v /= peak;
    }
  }
  return map;
}

}  // namespace wcam

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wcam/features.hpp"
#include "wcam/image.hpp"
#include "wcam/model.hpp"
#include "wcam/sobol.hpp"
#include "wcam/wavelet.hpp"

namespace wcam {

struct WcamConfig {
  WaveletSpec spec{WaveletFamily::Haar, 3, Boundary::Periodic};
  int grid_size = 8;
  int samples = 32;  // N; the run scores N(K+2) images
  std::uint64_t seed = 0;
  Scrambling scrambling = Scrambling::None;
  int batch_size = 64;
  bool clamp_reconstruction = true;
  /// Worker threads for masked reconstruction. Results do not depend on it.
  int jobs = 1;

  int feature_count() const noexcept { return grid_size * grid_size; }
  std::size_t forward_count() const noexcept {
    return static_cast<std::size_t>(samples) * (feature_count() + 2);
  }
  void validate() const;
};

struct WcamResult {
  WcamConfig config;
  FeatureLayout layout;
  std::vector<double> tsi;
  std::vector<double> first_order;
  double f_empty = 0.0;
  double variance = 0.0;
  std::string model_id;
  std::string image_digest;
  std::size_t evaluations = 0;

  int argmax_tsi() const;
};

FeatureLayout featurize(int side, const WcamConfig& config);

/// Multiplies every coefficient of the image's wavelet plane by the mask
/// value of the feature that owns it (same mask on every channel), inverts
/// the transform and optionally clamps to [0,1].
Image perturb_reconstruct(const Image& image, const FeatureLayout& layout, std::span<const double> mask,
                          const WaveletSpec& spec, bool clamp);

/// Same as perturb_reconstruct, starting from an already transformed image.
Image perturb_plane(const CoefficientPlane& plane, const FeatureLayout& layout, std::span<const double> mask,
                    bool clamp);

/// WCAM attribution: scores exactly N(K+2) masked reconstructions in design
/// order and estimates total (and first-order) Sobol indices per feature.
///
/// Throws DegenerateVariance (carrying the mean score) when the model does
/// not react to the perturbations, and ModelError subclasses on adapter
/// failures.
WcamResult attribute(const Image& image, ScoreFn& model, const WcamConfig& config);

/// Per-pixel sum of the TSIs of all features whose footprint covers the
/// pixel. Row-major side x side. Normalized to max 1 when requested and the
/// maximum is positive.
std::vector<double> project_spatial(const WcamResult& result, bool normalize = true);

}  // namespace wcam

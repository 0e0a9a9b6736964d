// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wcam/features.hpp"
#include "wcam/image.hpp"
#include "wcam/wavelet.hpp"

namespace wcam {

/// A black-box classifier: batch of images in, one probability per image out.
class ScoreFn {
 public:
  virtual ~ScoreFn() = default;
  virtual std::vector<double> score(std::span<const Image> images) = 0;
  virtual std::string model_id() const = 0;
  /// Largest batch the scorer accepts; 0 means unbounded.
  virtual std::size_t max_batch() const { return 0; }
};

/// Scores one batch and enforces the scoring contract: one score per image,
/// every score finite and in [0,1]. Throws ScoreRangeError or ProtocolError.
std::vector<double> score_batch(ScoreFn& model, std::span<const Image> images);

/// Adapts a per-image callable.
class FunctionModel : public ScoreFn {
 public:
  FunctionModel(std::string id, std::function<double(const Image&)> fn);
  std::vector<double> score(std::span<const Image> images) override;
  std::string model_id() const override { return id_; }

 private:
  std::string id_;
  std::function<double(const Image&)> fn_;
};

/// Mean sample value over all channels.
class MeanPixelModel : public ScoreFn {
 public:
  std::vector<double> score(std::span<const Image> images) override;
  std::string model_id() const override { return "builtin:mean"; }
};

class ConstantModel : public ScoreFn {
 public:
  explicit ConstantModel(double value) : value_(value) {}
  std::vector<double> score(std::span<const Image> images) override;
  std::string model_id() const override;

 private:
  double value_;
};

/// logistic(alpha * E) where E is the energy (sum of squared coefficients
/// over all channels) of the target feature's cell in the image's wavelet
/// plane. A zero image scores 0.5.
class CellEnergyModel : public ScoreFn {
 public:
  /// Throws DimensionError if target is not a feature of the layout.
  CellEnergyModel(FeatureLayout layout, int target, WaveletSpec spec, double alpha);

  std::vector<double> score(std::span<const Image> images) override;
  std::string model_id() const override;

  double cell_energy(const Image& image) const;
  double score_one(const Image& image) const;
  int target() const noexcept { return target_; }
  double alpha() const noexcept { return alpha_; }

 private:
  FeatureLayout layout_;
  int target_;
  WaveletSpec spec_;
  double alpha_;
};

/// Picks alpha so that the unperturbed image scores logistic(logit); falls
/// back to 1 when the cell carries no energy.
double calibrate_alpha(const Image& image, const FeatureLayout& layout, int target, const WaveletSpec& spec,
                       double logit = 2.0);

std::unique_ptr<CellEnergyModel> analytic_cell_energy_model(const FeatureLayout& layout, int target,
                                                            const WaveletSpec& spec, double alpha);

/// Forwards to another scorer and counts the images it sees.
class CountingModel : public ScoreFn {
 public:
  explicit CountingModel(ScoreFn& inner) : inner_(inner) {}
  std::vector<double> score(std::span<const Image> images) override;
  std::string model_id() const override { return inner_.model_id(); }
  std::size_t max_batch() const override { return inner_.max_batch(); }

  std::size_t images_scored() const noexcept { return images_; }
  std::size_t calls() const noexcept { return calls_; }

 private:
  ScoreFn& inner_;
  std::atomic<std::size_t> images_{0};
  std::atomic<std::size_t> calls_{0};
};

}  // namespace wcam

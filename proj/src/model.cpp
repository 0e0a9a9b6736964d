// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/model.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "wcam/error.hpp"

namespace wcam {

std::vector<double> score_batch(ScoreFn& model, std::span<const Image> images) {
  if (images.empty()) throw ConfigError("score_batch: empty batch");
  if (model.max_batch() != 0 && images.size() > model.max_batch()) {
    throw ConfigError("score_batch: batch of " + std::to_string(images.size()) + " exceeds max batch " +
                      std::to_string(model.max_batch()));
  }
  std::vector<double> scores = model.score(images);
  if (scores.size() != images.size()) {
    throw ProtocolError("model " + model.model_id() + " returned " + std::to_string(scores.size()) +
                        " scores for " + std::to_string(images.size()) + " images");
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i]) || scores[i] < 0.0 || scores[i] > 1.0) {
      std::ostringstream os;
      os << "model " << model.model_id() << " returned score " << scores[i] << " for image " << i
         << "; scores must be finite probabilities in [0,1]";
      throw ScoreRangeError(os.str());
    }
  }
  return scores;
}

FunctionModel::FunctionModel(std::string id, std::function<double(const Image&)> fn)
    : id_(std::move(id)), fn_(std::move(fn)) {}

std::vector<double> FunctionModel::score(std::span<const Image> images) {
  std::vector<double> out;
  out.reserve(images.size());
  for (const auto& img : images) out.push_back(fn_(img));
  return out;
}

std::vector<double> MeanPixelModel::score(std::span<const Image> images) {
  std::vector<double> out;
  out.reserve(images.size());
  for (const auto& img : images) {
    double sum = 0.0;
    for (float v : img.data()) sum += v;
    out.push_back(img.size() ? sum / static_cast<double>(img.size()) : 0.0);
  }
  return out;
}

std::vector<double> ConstantModel::score(std::span<const Image> images) {
  return std::vector<double>(images.size(), value_);
}

std::string ConstantModel::model_id() const {
  std::ostringstream os;
  os << "builtin:constant:" << value_;
  return os.str();
}

CellEnergyModel::CellEnergyModel(FeatureLayout layout, int target, WaveletSpec spec, double alpha)
    : layout_(std::move(layout)), target_(target), spec_(spec), alpha_(alpha) {
  if (target < 0 || target >= layout_.feature_count()) {
    throw DimensionError("target feature " + std::to_string(target) + " outside layout of " +
                         std::to_string(layout_.feature_count()) + " features");
  }
  spec_.validate();
}

double CellEnergyModel::cell_energy(const Image& image) const {
  if (image.width() != layout_.side() || image.height() != layout_.side()) {
    throw DimensionError("cell-energy model expects " + std::to_string(layout_.side()) + "x" +
                         std::to_string(layout_.side()) + " images");
  }
  const CoefficientPlane plane = forward_plane(image, spec_);
  const Rect& r = layout_.feature(target_).region;
  double e = 0.0;
  for (int c = 0; c < plane.channels; ++c) {
    for (int y = r.y0; y < r.y1; ++y) {
      for (int x = r.x0; x < r.x1; ++x) {
        const double v = plane.at(c, y, x);
        e += v * v;
      }
    }
  }
  return e;
}

double CellEnergyModel::score_one(const Image& image) const {
  return 1.0 / (1.0 + std::exp(-alpha_ * cell_energy(image)));
}

std::vector<double> CellEnergyModel::score(std::span<const Image> images) {
  std::vector<double> out;
  out.reserve(images.size());
  for (const auto& img : images) out.push_back(score_one(img));
  return out;
}

std::string CellEnergyModel::model_id() const {
  std::ostringstream os;
  os.precision(17);
  os << "builtin:cell" << target_ << "?grid=" << layout_.grid_size() << "&alpha=" << alpha_;
  return os.str();
}

double calibrate_alpha(const Image& image, const FeatureLayout& layout, int target, const WaveletSpec& spec,
                       double logit) {
  const CellEnergyModel probe(layout, target, spec, 1.0);
  const double e = probe.cell_energy(image);
  return e > 0.0 ? logit / e : 1.0;
}

std::unique_ptr<CellEnergyModel> analytic_cell_energy_model(const FeatureLayout& layout, int target,
                                                            const WaveletSpec& spec, double alpha) {
  return std::make_unique<CellEnergyModel>(layout, target, spec, alpha);
}

std::vector<double> CountingModel::score(std::span<const Image> images) {
  ++calls_;
  images_ += images.size();
  return inner_.score(images);
}

}  // namespace wcam

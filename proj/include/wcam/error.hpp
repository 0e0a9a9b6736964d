// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <stdexcept>
#include <string>

namespace wcam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes and structure.
class DimensionError : public Error {
 public:
  using Error::Error;
};
class StructureError : public Error {
 public:
  using Error::Error;
};
class NonFiniteInput : public Error {
 public:
  using Error::Error;
};
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Sensitivity analysis.
class UnsupportedDimension : public Error {
 public:
  using Error::Error;
};

/// Raised when the score variance over the design is below the degeneracy
/// threshold. Carries the mean score so callers can report an indifferent model.
class DegenerateVariance : public Error {
 public:
  DegenerateVariance(double f_empty, double variance);
  double f_empty() const noexcept { return f_empty_; }
  double variance() const noexcept { return variance_; }

 private:
  double f_empty_;
  double variance_;
};

// Model adapters.
class ModelError : public Error {
 public:
  using Error::Error;
};
class TimeoutError : public ModelError {
 public:
  using ModelError::ModelError;
};
class ProtocolError : public ModelError {
 public:
  using ModelError::ModelError;
};
class ScoreRangeError : public ModelError {
 public:
  using ModelError::ModelError;
};

// Evaluation.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};
class MissingScores : public Error {
 public:
  using Error::Error;
};
class UnpairedEntry : public Error {
 public:
  using Error::Error;
};
class ManifestError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace wcam

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "wcam/image.hpp"
#include "wcam/model.hpp"

namespace wcam {

// Wire protocol: newline-delimited JSON.
//   request  {"id": str, "images": [{"w": int, "h": int, "c": int, "dtype": "f32",
//             "data": base64(row-major, channel-planar, little-endian float32)}]}
//   response {"id": str, "scores": [number, ...]}
// A scorer may answer {"id": str, "error": str} instead of scores.
// Over stdio every message is one line; over HTTP one message per POST /score body.

nlohmann::json encode_request(const std::string& id, std::span<const Image> images);
/// Throws ProtocolError on schema violations.
std::vector<Image> decode_request(const nlohmann::json& request);
nlohmann::json encode_response(const std::string& id, std::span<const double> scores);
/// Parses a response line, checks the id and returns the scores. Throws
/// ProtocolError for malformed messages or id mismatch and ModelError for
/// error responses.
std::vector<double> decode_response(const std::string& line, const std::string& expected_id);

enum class Transport { StdioSubprocess, Http };

struct AdapterConfig {
  Transport transport = Transport::StdioSubprocess;
  /// Shell command line (stdio) or base URL such as http://127.0.0.1:8080 (http).
  std::string endpoint;
  int timeout_ms = 30000;
  std::size_t max_batch = 64;
  /// Extra attempts after a timeout or transport failure. Score requests are
  /// idempotent, so they are always safe to resend.
  int retries = 2;
  /// Concurrent score calls allowed; stdio serializes regardless.
  int max_in_flight = 4;
  /// Reported as model_id; defaults to "<transport>:<endpoint>".
  std::string model_id;

  void validate() const;
};

inline constexpr const char* kEndpointEnv = "WCAM_MODEL_ENDPOINT";

/// Replaces config.endpoint with $WCAM_MODEL_ENDPOINT when it is set and non-empty.
void apply_endpoint_override(AdapterConfig& config);

std::unique_ptr<ScoreFn> make_adapter(const AdapterConfig& config);

}  // namespace wcam

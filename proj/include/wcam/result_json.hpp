// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#pragma once

#include <string>

#include "json.hpp"
#include "wcam/engine.hpp"

namespace wcam {

nlohmann::json config_to_json(const WcamConfig& config);
/// Missing keys keep the defaults of WcamConfig.
WcamConfig config_from_json(const nlohmann::json& doc);

/// Sidecar document: {config, layout, tsi, first_order, f_empty, variance,
/// model_id, image_digest, evaluations}. No timestamps or host data, so
/// identical runs serialize to identical bytes.
nlohmann::json result_to_json(const WcamResult& result);
/// Rebuilds the layout from its summary. Throws StructureError on
/// inconsistent documents.
WcamResult result_from_json(const nlohmann::json& doc);

std::string dump_result(const WcamResult& result);

}  // namespace wcam

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wcam Authors

#include "wcam/result_json.hpp"

#include "wcam/error.hpp"

namespace wcam {

using nlohmann::json;

json config_to_json(const WcamConfig& c) {
  return {{"family", to_string(c.spec.family)},
          {"levels", c.spec.levels},
          {"boundary", to_string(c.spec.boundary)},
          {"grid_size", c.grid_size},
          {"n", c.samples},
          {"seed", c.seed},
          {"scrambling", c.scrambling == Scrambling::None ? "none" : "digital-shift"},
          {"batch_size", c.batch_size},
          {"clamp_reconstruction", c.clamp_reconstruction}};
}

WcamConfig config_from_json(const json& doc) {
  WcamConfig c;
  try {
    if (doc.contains("family")) c.spec.family = parse_family(doc["family"].get<std::string>());
    if (doc.contains("levels")) c.spec.levels = doc["levels"].get<int>();
    if (doc.contains("boundary")) c.spec.boundary = parse_boundary(doc["boundary"].get<std::string>());
    if (doc.contains("grid_size")) c.grid_size = doc["grid_size"].get<int>();
    if (doc.contains("n")) c.samples = doc["n"].get<int>();
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("scrambling")) {
      const auto s = doc["scrambling"].get<std::string>();
      if (s == "none") {
        c.scrambling = Scrambling::None;
      } else if (s == "digital-shift") {
        c.scrambling = Scrambling::DigitalShift;
      } else {
        throw ConfigError("unknown scrambling '" + s + "'");
      }
    }
    if (doc.contains("batch_size")) c.batch_size = doc["batch_size"].get<int>();
    if (doc.contains("clamp_reconstruction")) c.clamp_reconstruction = doc["clamp_reconstruction"].get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config document: ") + e.what());
  }
  return c;
}

namespace {

json rect_json(const Rect& r) { return json::array({r.y0, r.x0, r.y1, r.x1}); }

}  // namespace

json result_to_json(const WcamResult& r) {
  const FeatureLayout& layout = r.layout;
  json features = json::array();
  for (const Feature& f : layout.features()) {
    json bands = json::array();
    for (const auto& seg : f.segments) bands.push_back(seg.describe());
    features.push_back({{"id", f.id},
                        {"region", rect_json(f.region)},
                        {"bands", bands},
                        {"footprint_area", layout.footprint_area(f.id)}});
  }
  return {{"config", config_to_json(r.config)},
          {"layout",
           {{"side", layout.side()},
            {"grid_size", layout.grid_size()},
            {"levels", layout.levels()},
            {"cell_size", layout.cell_size()},
            {"feature_count", layout.feature_count()},
            {"features", features}}},
          {"tsi", r.tsi},
          {"first_order", r.first_order},
          {"f_empty", r.f_empty},
          {"variance", r.variance},
          {"model_id", r.model_id},
          {"image_digest", r.image_digest},
          {"evaluations", r.evaluations}};
}

WcamResult result_from_json(const json& doc) {
  WcamResult r;
  try {
    r.config = config_from_json(doc.at("config"));
    const auto& layout = doc.at("layout");
    r.layout = FeatureLayout(layout.at("side").get<int>(), layout.at("grid_size").get<int>(),
                             layout.at("levels").get<int>());
    r.tsi = doc.at("tsi").get<std::vector<double>>();
    r.first_order = doc.at("first_order").get<std::vector<double>>();
    r.f_empty = doc.at("f_empty").get<double>();
    r.variance = doc.at("variance").get<double>();
    r.model_id = doc.at("model_id").get<std::string>();
    r.image_digest = doc.at("image_digest").get<std::string>();
    r.evaluations = doc.at("evaluations").get<std::size_t>();
  } catch (const json::exception& e) {
    throw StructureError(std::string("bad result document: ") + e.what());
  }
  const auto k = static_cast<std::size_t>(r.layout.feature_count());
  if (r.tsi.size() != k || r.first_order.size() != k) {
    throw StructureError("result document index vectors do not match the layout");
  }
  return r;
}

std::string dump_result(const WcamResult& result) { return result_to_json(result).dump(2) + "\n"; }

}  // namespace wcam

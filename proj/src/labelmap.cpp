// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/assetio/labelmap.hpp"

#include <json.hpp>

#include "virtfusion/errors.hpp"

namespace virtfusion::assetio {

LabelMap::LabelMap(std::vector<LabelClass> classes)
    : classes_(std::move(classes)) {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (std::size_t j = i + 1; j < classes_.size(); ++j) {
      if (classes_[i].id == classes_[j].id) {
        throw ValidationError("label map: duplicate class id " +
                              std::to_string(classes_[i].id));
      }
    }
    if (classes_[i].canonical_height_m <= 0.0) {
      throw ValidationError("label map: canonical height must be > 0 for '" +
                            classes_[i].name + "'");
    }
  }
}

LabelMap LabelMap::default_indoor20() {
  return LabelMap({
      {1, "wall", 2.50},
      {2, "floor", 0.10},
      {3, "cabinet", 1.20},
      {4, "bed", 0.90},
      {5, "chair", 0.90},
      {6, "sofa", 0.80},
      {7, "table", 0.75},
      {8, "door", 2.00},
      {9, "window", 1.50},
      {10, "bookshelf", 1.80},
      {11, "picture", 0.60},
      {12, "counter", 1.00},
      {13, "desk", 0.75},
      {14, "curtain", 2.20},
      {15, "refrigerator", 1.70},
      {16, "shower curtain", 1.80},
      {17, "toilet", 0.75},
      {18, "sink", 0.85},
      {19, "bathtub", 0.55},
      {20, "otherfurniture", 1.00},
  });
}

LabelMap LabelMap::from_json(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("label map: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("classes") ||
      !doc["classes"].is_array()) {
    throw ParseError("label map: expected {\"classes\": [...]}");
  }
  std::vector<LabelClass> classes;
  for (const auto& c : doc["classes"]) {
    LabelClass lc;
    try {
      lc.id = c.at("id").get<std::uint32_t>();
      lc.name = c.at("name").get<std::string>();
      lc.canonical_height_m = c.at("canonical_height_m").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("label map class entry: ") + e.what());
    }
    classes.push_back(std::move(lc));
  }
  return LabelMap(std::move(classes));
}

std::string LabelMap::to_json() const {
  nlohmann::ordered_json doc;
  doc["classes"] = nlohmann::ordered_json::array();
  for (const auto& c : classes_) {
    doc["classes"].push_back({{"id", c.id},
                              {"name", c.name},
                              {"canonical_height_m", c.canonical_height_m}});
  }
  return doc.dump(2) + "\n";
}

bool LabelMap::contains(std::uint32_t id) const {
  for (const auto& c : classes_) {
    if (c.id == id) return true;
  }
  return false;
}

const LabelClass& LabelMap::at(std::uint32_t id) const {
  for (const auto& c : classes_) {
    if (c.id == id) return c;
  }
  throw ConfigError("label map: unknown class id " + std::to_string(id));
}

std::optional<std::uint32_t> LabelMap::id_of(std::string_view name) const {
  for (const auto& c : classes_) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

}  // namespace virtfusion::assetio

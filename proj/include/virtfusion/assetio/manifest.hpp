// SPDX-License-Identifier: Apache-2.0
//
// Object-pool manifest: one entry per generated asset with its class and the
// ordered chain of pipeline stages that produced it. JSON on disk with a
// stable key order; unknown keys survive a read/write cycle.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "virtfusion/assetio/labelmap.hpp"

namespace virtfusion::assetio {

struct StageRecord {
  std::string stage;
  std::string prompt;
  std::string param_hash;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool operator==(const StageRecord&) const = default;
};

struct ManifestEntry {
  std::string id;
  std::string path;
  std::uint32_t class_id = 0;
  std::string class_name;
  std::vector<StageRecord> provenance;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool operator==(const ManifestEntry&) const = default;
};

struct PoolManifest {
  std::vector<ManifestEntry> entries;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  bool operator==(const PoolManifest&) const = default;
};

/// Parses and validates. Duplicate asset ids raise ValidationError; with a
/// label map supplied, class ids absent from it do too.
PoolManifest read_manifest(std::string_view bytes,
                           const LabelMap* labels = nullptr);

/// Serializes with known keys first (id, path, class_id, class_name,
/// provenance), then any preserved unknown keys in their original order.
std::string write_manifest(const PoolManifest& manifest);

}  // namespace virtfusion::assetio

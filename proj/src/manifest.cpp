// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/assetio/manifest.hpp"

#include <set>

#include "virtfusion/errors.hpp"

namespace virtfusion::assetio {

namespace {

using ojson = nlohmann::ordered_json;

// Pulls `key` out of `src` with the requested type; everything not consumed
// by the caller lands in `extra` afterwards.
template <typename T>
T take(ojson& src, const char* key, const char* where) {
  const auto it = src.find(key);
  if (it == src.end()) {
    throw ParseError(std::string("manifest: missing '") + key + "' in " +
                     where);
  }
  T value;
  try {
    value = it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: bad '") + key + "' in " + where +
                     ": " + e.what());
  }
  src.erase(it);
  return value;
}

StageRecord parse_record(ojson obj) {
  StageRecord rec;
  rec.stage = take<std::string>(obj, "stage", "provenance record");
  rec.prompt = take<std::string>(obj, "prompt", "provenance record");
  rec.param_hash = take<std::string>(obj, "param_hash", "provenance record");
  rec.extra = std::move(obj);
  return rec;
}

ojson dump_record(const StageRecord& rec) {
  ojson obj;
  obj["stage"] = rec.stage;
  obj["prompt"] = rec.prompt;
  obj["param_hash"] = rec.param_hash;
  for (const auto& [k, v] : rec.extra.items()) obj[k] = v;
  return obj;
}

}  // namespace

PoolManifest read_manifest(std::string_view bytes, const LabelMap* labels) {
  ojson doc;
  try {
    doc = ojson::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("manifest: root must be an object");

  PoolManifest manifest;
  auto entries_it = doc.find("entries");
  if (entries_it == doc.end() || !entries_it->is_array()) {
    throw ParseError("manifest: missing 'entries' array");
  }

  std::set<std::string> seen_ids;
  for (ojson& raw : *entries_it) {
    if (!raw.is_object()) throw ParseError("manifest: entry must be an object");
    ManifestEntry entry;
    entry.id = take<std::string>(raw, "id", "entry");
    entry.path = take<std::string>(raw, "path", "entry");
    entry.class_id = take<std::uint32_t>(raw, "class_id", "entry");
    entry.class_name = take<std::string>(raw, "class_name", "entry");

    const auto prov = raw.find("provenance");
    if (prov == raw.end() || !prov->is_array()) {
      throw ParseError("manifest: entry '" + entry.id +
                       "' missing 'provenance' array");
    }
    for (ojson& rec : *prov) entry.provenance.push_back(parse_record(std::move(rec)));
    raw.erase("provenance");
    entry.extra = std::move(raw);

    if (!seen_ids.insert(entry.id).second) {
      throw ValidationError("manifest: duplicate asset id '" + entry.id + "'");
    }
    if (labels && !labels->contains(entry.class_id)) {
      throw ValidationError("manifest: entry '" + entry.id +
                            "' has class id " +
                            std::to_string(entry.class_id) +
                            " absent from the label map");
    }
    manifest.entries.push_back(std::move(entry));
  }
  doc.erase("entries");
  manifest.extra = std::move(doc);
  return manifest;
}

std::string write_manifest(const PoolManifest& manifest) {
  std::set<std::string> seen_ids;
  for (const auto& entry : manifest.entries) {
    if (!seen_ids.insert(entry.id).second) {
      throw ValidationError("manifest: duplicate asset id '" + entry.id + "'");
    }
  }

  ojson doc;
  doc["entries"] = ojson::array();
  for (const auto& entry : manifest.entries) {
    ojson obj;
    obj["id"] = entry.id;
    obj["path"] = entry.path;
    obj["class_id"] = entry.class_id;
    obj["class_name"] = entry.class_name;
    obj["provenance"] = ojson::array();
    for (const auto& rec : entry.provenance) {
      obj["provenance"].push_back(dump_record(rec));
    }
    for (const auto& [k, v] : entry.extra.items()) obj[k] = v;
    doc["entries"].push_back(std::move(obj));
  }
  for (const auto& [k, v] : manifest.extra.items()) doc[k] = v;
  return doc.dump(2) + "\n";
}

}  // namespace virtfusion::assetio

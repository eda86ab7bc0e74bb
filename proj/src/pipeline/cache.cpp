// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/pipeline/cache.hpp"

#include <chrono>
#include <fstream>
#include <memory>

#include "virtfusion/errors.hpp"

namespace virtfusion::pipeline {

namespace fs = std::filesystem;

std::string request_key(StageKind stage,
                        const std::vector<std::string>& parent_ids,
                        const nlohmann::json& params) {
  std::string blob(to_string(stage));
  blob += '\n';
  for (const auto& parent : parent_ids) {
    blob += parent;
    blob += '\n';
  }
  blob += params_hash(params);
  return sha256_hex(blob);
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cache: cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return bytes;
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cache: cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  fs::rename(tmp, path);
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

CacheStore::CacheStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
}

fs::path CacheStore::dir_for(StageKind stage) const {
  return root_ / std::string(to_string(stage));
}

std::optional<Artifact> CacheStore::get(StageKind stage,
                                        const std::string& key) const {
  const fs::path payload_path = dir_for(stage) / key;
  const fs::path record_path = dir_for(stage) / (key + ".json");
  if (!fs::exists(payload_path) || !fs::exists(record_path)) {
    return std::nullopt;
  }

  Artifact artifact;
  artifact.payload = read_file(payload_path);

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(record_path));
    artifact.record.id = doc.at("id").get<std::string>();
    artifact.record.stage = stage_from_string(doc.at("stage").get<std::string>());
    artifact.record.inputs = doc.at("inputs").get<std::vector<std::string>>();
    artifact.record.params_hash = doc.at("params_hash").get<std::string>();
    artifact.record.payload_path = payload_path.string();
    artifact.record.created_at = doc.value("created_at", "");
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable record: treat as a miss
  }

  // Full-id integrity check against the stored payload.
  std::string blob(to_string(artifact.record.stage));
  blob += '\n';
  for (const auto& parent : artifact.record.inputs) {
    blob += parent;
    blob += '\n';
  }
  blob += artifact.record.params_hash;
  blob += '\n';
  blob += artifact.payload;
  if (sha256_hex(blob) != artifact.record.id) return std::nullopt;

  return artifact;
}

void CacheStore::put(StageKind stage, const std::string& key,
                     const Artifact& artifact) {
  fs::create_directories(dir_for(stage));
  const fs::path payload_path = dir_for(stage) / key;
  write_file_atomic(payload_path, artifact.payload);

  nlohmann::ordered_json doc;
  doc["id"] = artifact.record.id;
  doc["stage"] = std::string(to_string(artifact.record.stage));
  doc["inputs"] = artifact.record.inputs;
  doc["params_hash"] = artifact.record.params_hash;
  doc["created_at"] = artifact.record.created_at.empty()
                          ? now_iso8601()
                          : artifact.record.created_at;
  write_file_atomic(dir_for(stage) / (key + ".json"), doc.dump(2) + "\n");
}

Artifact CacheStore::get_or_compute(StageKind stage, const std::string& key,
                                    const std::function<Artifact()>& compute) {
  // Fast path: on disk already.
  if (auto hit = get(stage, key)) return *hit;

  auto promise = std::make_shared<std::promise<Artifact>>();
  std::shared_future<Artifact> flight;
  bool leader = false;
  {
    std::lock_guard lock(flights_mutex_);
    auto it = flights_.find(key);
    if (it == flights_.end()) {
      flight = promise->get_future().share();
      flights_.emplace(key, flight);
      leader = true;
    } else {
      flight = it->second;
    }
  }

  if (!leader) return flight.get();

  try {
    // Another writer may have produced it while we queued.
    Artifact artifact;
    if (auto hit = get(stage, key)) {
      artifact = *hit;
    } else {
      artifact = compute();
      put(stage, key, artifact);
      artifact.record.payload_path = (dir_for(stage) / key).string();
    }
    promise->set_value(artifact);
    {
      std::lock_guard lock(flights_mutex_);
      flights_.erase(key);
    }
    return artifact;
  } catch (...) {
    promise->set_exception(std::current_exception());
    {
      std::lock_guard lock(flights_mutex_);
      flights_.erase(key);
    }
    throw;
  }
}

}  // namespace virtfusion::pipeline

// SPDX-License-Identifier: Apache-2.0
//
// Content-addressed artifact cache. Payloads live at
// cache/<stage>/<request-key> with a sibling .json record; the request key
// hashes (stage, parent ids, params) so a rerun with unchanged inputs finds
// its artifact before executing anything. Concurrent readers are free;
// writers are exclusive per key; in-process duplicate computations collapse
// into one via single-flight futures.

#pragma once

#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "virtfusion/pipeline/stages.hpp"

namespace virtfusion::pipeline {

struct Artifact {
  ArtifactRecord record;
  std::string payload;
};

/// Hash of everything that determines a stage execution's output.
std::string request_key(StageKind stage,
                        const std::vector<std::string>& parent_ids,
                        const nlohmann::json& params);

class CacheStore {
public:
  explicit CacheStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  /// Disk lookup. Verifies the stored record's artifact id against the
  /// stored payload; a mismatch (corruption) reads as a miss.
  std::optional<Artifact> get(StageKind stage, const std::string& key) const;

  void put(StageKind stage, const std::string& key, const Artifact& artifact);

  /// Cache-through execution with single-flight: when several workers ask
  /// for the same key at once, exactly one runs `compute`; the rest share
  /// the result.
  Artifact get_or_compute(StageKind stage, const std::string& key,
                          const std::function<Artifact()>& compute);

private:
  std::filesystem::path dir_for(StageKind stage) const;

  std::filesystem::path root_;
  std::mutex flights_mutex_;
  std::map<std::string, std::shared_future<Artifact>> flights_;
};

}  // namespace virtfusion::pipeline

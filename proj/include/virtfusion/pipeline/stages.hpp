// SPDX-License-Identifier: Apache-2.0
//
// Stage vocabulary shared by the orchestrator, transports, and cache: the
// fixed stage chain, service endpoints, artifact records, and the JSON
// envelope that crosses every transport.
//
// Wire envelope (field names are part of the external contract):
//   request:  {"stage": str, "params": {...}, "inputs": [base64, ...]}
//   response: {"outputs": [base64, ...]}

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace virtfusion::pipeline {

enum class StageKind {
  PromptGen,
  TextToImage,
  DepthEstimate,
  TextureAugment,
  DragEdit,
  ImageTo3D,
  PoolIngest,
  SceneCompose,
};

/// All stages in execution order. The chain is linear and fixed.
const std::vector<StageKind>& stage_order();

std::string_view to_string(StageKind stage);
StageKind stage_from_string(std::string_view name);

/// True for stages backed by an external generative service (everything up
/// to and including ImageTo3D); ingestion and composition run in-process.
bool is_generative(StageKind stage);

enum class Transport { Mock, Subprocess, Http };

struct ServiceEndpoint {
  StageKind stage = StageKind::TextToImage;
  Transport transport = Transport::Mock;
  /// Subprocess: command template with {in}/{out} placeholders.
  /// Http: base URL, e.g. "http://127.0.0.1:8080/stage".
  std::string address;
  double timeout_s = 30.0;
  int retries = 2;
  /// First backoff delay; doubles per retry.
  double backoff_base_s = 1.0;
};

struct ArtifactRecord {
  std::string id;          // sha256 over (stage, parent ids, params, payload)
  StageKind stage = StageKind::PromptGen;
  std::vector<std::string> inputs;  // parent artifact ids
  std::string params_hash;
  std::string payload_path;
  std::string created_at;  // ISO 8601 UTC; excluded from all hashes
};

struct StageRequest {
  StageKind stage = StageKind::PromptGen;
  nlohmann::json params;             // canonicalized by sorted keys
  std::vector<std::string> inputs;   // raw payload bytes

  std::string to_envelope() const;
  static StageRequest from_envelope(std::string_view bytes);
};

struct StageResponse {
  std::vector<std::string> outputs;  // raw payload bytes

  std::string to_envelope() const;
  static StageResponse from_envelope(std::string_view bytes);
};

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// First 8 bytes of sha256(bytes) as an RNG seed.
std::uint64_t hash_seed(std::string_view bytes);

/// Canonical parameter hash: sorted-key JSON, then SHA-256.
std::string params_hash(const nlohmann::json& params);

/// Artifact identity: stage name, parent ids, canonical params, payload.
std::string artifact_id(StageKind stage,
                        const std::vector<std::string>& parent_ids,
                        const nlohmann::json& params,
                        std::string_view payload);

}  // namespace virtfusion::pipeline

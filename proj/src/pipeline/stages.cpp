// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/pipeline/stages.hpp"

#include <openssl/evp.h>

#include <array>

#include "virtfusion/errors.hpp"

namespace virtfusion::pipeline {

const std::vector<StageKind>& stage_order() {
  static const std::vector<StageKind> order{
      StageKind::PromptGen,     StageKind::TextToImage,
      StageKind::DepthEstimate, StageKind::TextureAugment,
      StageKind::DragEdit,      StageKind::ImageTo3D,
      StageKind::PoolIngest,    StageKind::SceneCompose,
  };
  return order;
}

std::string_view to_string(StageKind stage) {
  switch (stage) {
    case StageKind::PromptGen: return "PromptGen";
    case StageKind::TextToImage: return "TextToImage";
    case StageKind::DepthEstimate: return "DepthEstimate";
    case StageKind::TextureAugment: return "TextureAugment";
    case StageKind::DragEdit: return "DragEdit";
    case StageKind::ImageTo3D: return "ImageTo3D";
    case StageKind::PoolIngest: return "PoolIngest";
    case StageKind::SceneCompose: return "SceneCompose";
  }
  throw InvalidArgumentError("unknown stage kind");
}

StageKind stage_from_string(std::string_view name) {
  for (StageKind stage : stage_order()) {
    if (to_string(stage) == name) return stage;
  }
  throw ParseError("unknown stage name '" + std::string(name) + "'");
}

bool is_generative(StageKind stage) {
  return stage != StageKind::PoolIngest && stage != StageKind::SceneCompose;
}

// ---------------------------------------------------------------------------
// Envelope
// ---------------------------------------------------------------------------

std::string StageRequest::to_envelope() const {
  nlohmann::ordered_json doc;
  doc["stage"] = std::string(to_string(stage));
  doc["params"] = params;
  doc["inputs"] = nlohmann::ordered_json::array();
  for (const auto& input : inputs) {
    doc["inputs"].push_back(base64_encode(input));
  }
  return doc.dump();
}

StageRequest StageRequest::from_envelope(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("stage request: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("stage") || !doc.contains("params") ||
      !doc.contains("inputs") || !doc["inputs"].is_array()) {
    throw ParseError("stage request: expected {stage, params, inputs}");
  }
  StageRequest request;
  request.stage = stage_from_string(doc["stage"].get<std::string>());
  request.params = doc["params"];
  for (const auto& input : doc["inputs"]) {
    request.inputs.push_back(base64_decode(input.get<std::string>()));
  }
  return request;
}

std::string StageResponse::to_envelope() const {
  nlohmann::ordered_json doc;
  doc["outputs"] = nlohmann::ordered_json::array();
  for (const auto& output : outputs) {
    doc["outputs"].push_back(base64_encode(output));
  }
  return doc.dump();
}

StageResponse StageResponse::from_envelope(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("stage response: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("outputs") ||
      !doc["outputs"].is_array()) {
    throw ParseError("stage response: expected {outputs}");
  }
  StageResponse response;
  for (const auto& output : doc["outputs"]) {
    if (!output.is_string()) {
      throw ParseError("stage response: outputs must be base64 strings");
    }
    response.outputs.push_back(base64_decode(output.get<std::string>()));
  }
  return response;
}

// ---------------------------------------------------------------------------
// base64 / hashing
// ---------------------------------------------------------------------------

namespace {

constexpr char kB64[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}

}  // namespace

std::string base64_encode(std::string_view bytes) {
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  while (i + 3 <= bytes.size()) {
    const std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                            (static_cast<unsigned char>(bytes[i + 1]) << 8) |
                            static_cast<unsigned char>(bytes[i + 2]);
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back(kB64[v & 63]);
    i += 3;
  }
  const std::size_t rest = bytes.size() - i;
  if (rest == 1) {
    const std::uint32_t v = static_cast<unsigned char>(bytes[i]) << 16;
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out += "==";
  } else if (rest == 2) {
    const std::uint32_t v = (static_cast<unsigned char>(bytes[i]) << 16) |
                            (static_cast<unsigned char>(bytes[i + 1]) << 8);
    out.push_back(kB64[(v >> 18) & 63]);
    out.push_back(kB64[(v >> 12) & 63]);
    out.push_back(kB64[(v >> 6) & 63]);
    out.push_back('=');
  }
  return out;
}

std::string base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) {
    throw ParseError("base64: length must be a multiple of 4");
  }
  std::string out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    int vals[4];
    int pad = 0;
    for (int k = 0; k < 4; ++k) {
      const char c = text[i + k];
      if (c == '=') {
        // Padding only in the last two positions of the final quad.
        if (i + 4 != text.size() || k < 2) {
          throw ParseError("base64: misplaced padding");
        }
        vals[k] = 0;
        ++pad;
      } else {
        if (pad > 0) throw ParseError("base64: data after padding");
        vals[k] = b64_value(c);
        if (vals[k] < 0) throw ParseError("base64: invalid character");
      }
    }
    const std::uint32_t v = (vals[0] << 18) | (vals[1] << 12) |
                            (vals[2] << 6) | vals[3];
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    if (pad < 2) out.push_back(static_cast<char>((v >> 8) & 0xff));
    if (pad < 1) out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length,
                  EVP_sha256(), nullptr)) {
    throw Error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::uint64_t hash_seed(std::string_view bytes) {
  const std::string hex = sha256_hex(bytes);
  std::uint64_t seed = 0;
  for (int i = 0; i < 16; ++i) {
    seed = seed * 16 + (hex[i] <= '9' ? hex[i] - '0' : hex[i] - 'a' + 10);
  }
  return seed;
}

std::string params_hash(const nlohmann::json& params) {
  // nlohmann::json keeps object keys sorted, so dump() is canonical.
  return sha256_hex(params.dump());
}

std::string artifact_id(StageKind stage,
                        const std::vector<std::string>& parent_ids,
                        const nlohmann::json& params,
                        std::string_view payload) {
  std::string blob(to_string(stage));
  blob += '\n';
  for (const auto& parent : parent_ids) {
    blob += parent;
    blob += '\n';
  }
  blob += params_hash(params);
  blob += '\n';
  blob += payload;
  return sha256_hex(blob);
}

}  // namespace virtfusion::pipeline

// SPDX-License-Identifier: Apache-2.0
//
// Deterministic in-process stand-ins for the external generative services.
// Outputs are pure functions of the request, so identical configs replay
// byte-identically; visual quality is a non-goal. Per-stage execution
// counters support cache-soundness tests.

#pragma once

#include <map>
#include <mutex>

#include "virtfusion/pipeline/stages.hpp"

namespace virtfusion::pipeline {

class MockDispatcher {
public:
  /// Handles any generative StageRequest envelope and returns a response
  /// envelope. Unknown or non-generative stages raise StageError.
  std::string dispatch(std::string_view request_envelope);

  /// Executions since construction, by stage.
  std::uint64_t executions(StageKind stage) const;
  std::uint64_t total_executions() const;

private:
  std::string run(const StageRequest& request);

  mutable std::mutex mutex_;
  std::map<StageKind, std::uint64_t> counts_;
};

/// The individual generators, exposed for direct testing.
namespace mock {

/// params: {"prompt": str, "seed": uint}. 64x64 RGB PNG produced by a
/// 10-step reverse-diffusion walk seeded from the prompt hash.
std::string text_to_image(const nlohmann::json& params);

/// input: RGB PNG. Output: 16-bit gray PNG, radial depth gradient of the
/// same width/height.
std::string depth_estimate(std::string_view image_png);

/// inputs: image + depth. params: {"prompt": str}. Deterministic recolor:
/// keeps luminance, swaps chroma toward a palette seeded by the prompt.
std::string texture_augment(std::string_view image_png,
                            std::string_view depth_png,
                            const nlohmann::json& params);

/// input: image. params: {"plan": str (drag-plan JSON)}. Applies each
/// instruction as a local backward warp around its handle.
std::string drag_edit(std::string_view image_png, const nlohmann::json& params);

/// input: image. params: {"remove_background": bool}. Extrudes a height
/// field from the image into a colored OBJ mesh.
std::string image_to_3d(std::string_view image_png,
                        const nlohmann::json& params);

/// params: {"system": str, "user": str, "max_items": int}. Numbered-list
/// chat text via the promptgen mock client.
std::string prompt_gen(const nlohmann::json& params);

}  // namespace mock

}  // namespace virtfusion::pipeline

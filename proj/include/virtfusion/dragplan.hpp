// SPDX-License-Identifier: Apache-2.0
//
// Automatic drag-edit planning: pick seeding points on the object mask, draw
// a random direction and a Gaussian-distributed distance per handle, emit
// (handle -> target) instructions for an external drag-based editor. This
// module does no image processing; the mask comes from upstream.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "virtfusion/rng.hpp"

namespace virtfusion::dragplan {

struct DragConfig {
  double mu = 40.0;     // mean drag distance, pixels
  double sigma = 10.0;  // std dev, pixels
  int n_handles = 1;    // 1 or 2
  std::uint64_t seed = 0;
};

/// Per-pixel foreground mask; true marks the object.
struct ObjectMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bitmap;  // row-major, width*height entries

  bool foreground(int x, int y) const {
    return bitmap[static_cast<std::size_t>(y) * width + x] != 0;
  }
};

struct DragInstruction {
  double handle_x = 0.0, handle_y = 0.0;  // integer-valued: a mask pixel
  double target_x = 0.0, target_y = 0.0;  // clamped into image bounds

  bool operator==(const DragInstruction&) const = default;
};

struct DragPlan {
  std::string image_ref;
  std::vector<DragInstruction> instructions;
  /// Diagnostics, not part of the wire format: the Gaussian distance of each
  /// instruction before the target was clamped into bounds.
  std::vector<double> pre_clamp_distances;
};

/// Samples n_handles handles uniformly from foreground pixels (without
/// replacement); per handle draws direction theta ~ U[0, 2pi) and distance
/// d = max(0, Normal(mu, sigma^2)), then clamps the target componentwise
/// into [0, width-1] x [0, height-1].
DragPlan plan_drag(const ObjectMask& mask, const DragConfig& cfg, Rng& rng);

/// JSON wire format, exactly:
/// {"image_ref":str,"instructions":[{"handle":[x,y],"target":[x,y]}]}
std::string serialize_plan(const DragPlan& plan);

/// Parses the wire format; negative or non-finite coordinates are rejected.
/// pre_clamp_distances is diagnostics-only and comes back empty.
DragPlan deserialize_plan(std::string_view bytes);

}  // namespace virtfusion::dragplan

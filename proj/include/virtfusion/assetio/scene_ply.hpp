// SPDX-License-Identifier: Apache-2.0
//
// On-disk scene format: binary little-endian PLY with one vertex element and
// the fixed property layout
//
//   float x, float y, float z,
//   uchar red, uchar green, uchar blue,
//   ushort semantic_label, ushort instance_label
//
// Scene metadata rides in header comment lines of the form
// `comment vfz:<key>=<value>` so a scene file is self-describing. A JSON
// sidecar writer is provided for tools that strip PLY comments.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "virtfusion/geometry.hpp"

namespace virtfusion::assetio {

struct SceneMeta {
  std::string scene_id;
  std::uint64_t seed = 0;
  std::string template_id;
  /// Instance id -> semantic class id. Key 0, when present, gives the class
  /// of unassigned points (e.g. a synthesized floor slab).
  std::map<std::uint32_t, std::uint32_t> instance_classes;
  /// Whole-scene yaw applied as the final composition step, radians. Stored
  /// so tools can recover the placement frame.
  double scene_yaw = 0.0;

  bool operator==(const SceneMeta&) const = default;
};

struct SceneFile {
  geometry::LabeledCloud cloud;
  SceneMeta meta;

  bool operator==(const SceneFile&) const = default;
};

/// Throws ValidationError unless: the cloud arrays are parallel and finite,
/// every nonzero instance id appears in the instance map, and every point's
/// sem equals the class mapped from its ins (ins 0 points must carry
/// map[0] when present, else sem 0). Run by both reader and writer.
void check_scene(const SceneFile& scene);

/// Serializes; label values above 65535 raise RangeError.
std::string write_scene_ply(const SceneFile& scene);

/// Parses and validates; malformed headers, property-layout mismatches, and
/// truncated or oversized bodies raise ParseError naming the offense.
SceneFile read_scene_ply(std::string_view bytes);

/// Metadata-only JSON sidecar (same fields as the vfz comments).
std::string write_scene_sidecar(const SceneMeta& meta);

}  // namespace virtfusion::assetio

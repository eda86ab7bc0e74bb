// SPDX-License-Identifier: Apache-2.0
//
// Wavefront OBJ mesh ingestion: triangles plus the `v x y z r g b`
// vertex-color extension. Materials, normals, and texcoords are skipped.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "virtfusion/geometry.hpp"

namespace virtfusion::assetio {

/// Triangle mesh with optional per-vertex colors (linear [0,1] floats; empty
/// means no colors). Faces index into `vertices`; polygons are fan-split into
/// triangles at parse time.
struct MeshAsset {
  std::vector<geometry::Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> faces;
  std::vector<std::array<float, 3>> colors;

  bool has_colors() const { return !colors.empty(); }
  bool operator==(const MeshAsset&) const = default;
};

/// Parse errors carry the 1-based line number.
MeshAsset parse_obj(std::string_view text);

/// Inverse of parse_obj for meshes this library produces; numbers are
/// printed in shortest round-trip form.
std::string write_obj(const MeshAsset& mesh);

}  // namespace virtfusion::assetio

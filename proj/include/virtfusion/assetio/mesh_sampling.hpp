// SPDX-License-Identifier: Apache-2.0
//
// Area-uniform surface sampling: triangle meshes into labeled point clouds.

#pragma once

#include "virtfusion/assetio/obj_io.hpp"
#include "virtfusion/geometry.hpp"
#include "virtfusion/rng.hpp"

namespace virtfusion::assetio {

/// Draws n points on the mesh surface: the face is chosen with probability
/// proportional to its area, the position barycentric-uniform within the
/// face. Colors interpolate vertex colors when present, otherwise mid-gray
/// (128,128,128). sem/ins come out 0; the object pool assigns them later.
/// A mesh whose faces all have zero area raises InvalidArgumentError.
geometry::LabeledCloud sample_mesh(const MeshAsset& mesh, std::size_t n,
                                   Rng& rng);

}  // namespace virtfusion::assetio

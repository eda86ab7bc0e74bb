// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test binaries: random-but-valid fixtures and small
// independent oracles.

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "virtfusion/assetio/labelmap.hpp"
#include "virtfusion/assetio/mesh_sampling.hpp"
#include "virtfusion/assetio/obj_io.hpp"
#include "virtfusion/assetio/scene_ply.hpp"
#include "virtfusion/geometry.hpp"
#include "virtfusion/objectpool.hpp"
#include "virtfusion/rng.hpp"

namespace vftest {

using virtfusion::Rng;
namespace geom = virtfusion::geometry;
namespace assetio = virtfusion::assetio;

/// Coordinates representable in float, so scene PLY round trips are exact.
inline double fcoord(Rng& rng, double lo, double hi) {
  return static_cast<double>(static_cast<float>(rng.uniform(lo, hi)));
}

/// Random valid scene: a few instances with consistent sem/ins labels plus
/// optional unassigned background points.
inline assetio::SceneFile random_scene(Rng& rng, std::size_t max_points = 500) {
  assetio::SceneFile scene;
  const std::size_t n_instances = 1 + rng.uniform_index(4);
  std::uint32_t background_class = 0;
  const bool with_background = rng.uniform() < 0.4;
  if (with_background) {
    background_class = static_cast<std::uint32_t>(1 + rng.uniform_index(20));
    scene.meta.instance_classes[0] = background_class;
  }
  for (std::uint32_t i = 1; i <= n_instances; ++i) {
    scene.meta.instance_classes[i] =
        static_cast<std::uint32_t>(1 + rng.uniform_index(20));
  }

  const std::size_t n = 1 + rng.uniform_index(max_points);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t ins = static_cast<std::uint32_t>(
        rng.uniform_index(n_instances + (with_background ? 1 : 0) ) +
        (with_background ? 0 : 1));
    const std::uint32_t sem = scene.meta.instance_classes.at(ins);
    scene.cloud.push_back({fcoord(rng, -8, 8), fcoord(rng, -8, 8),
                           fcoord(rng, 0, 4)},
                          {static_cast<std::uint8_t>(rng.uniform_index(256)),
                           static_cast<std::uint8_t>(rng.uniform_index(256)),
                           static_cast<std::uint8_t>(rng.uniform_index(256))},
                          sem, ins);
  }
  scene.meta.scene_id = "scene_" + std::to_string(rng.uniform_index(100000));
  scene.meta.seed = rng.next_u64();
  scene.meta.template_id = "grid3x3";
  scene.meta.scene_yaw = rng.uniform(0, 6.28);
  return scene;
}

/// Axis-aligned box mesh (12 triangles) spanning [0,sx]x[0,sy]x[0,sz],
/// optionally colored.
inline assetio::MeshAsset box_mesh(double sx, double sy, double sz,
                                   bool colored = false) {
  assetio::MeshAsset mesh;
  for (int zi = 0; zi <= 1; ++zi) {
    for (int yi = 0; yi <= 1; ++yi) {
      for (int xi = 0; xi <= 1; ++xi) {
        mesh.vertices.push_back({xi * sx, yi * sy, zi * sz});
        if (colored) {
          mesh.colors.push_back({static_cast<float>(xi),
                                 static_cast<float>(yi),
                                 static_cast<float>(zi)});
        }
      }
    }
  }
  const std::array<std::array<std::uint32_t, 4>, 6> quads{{
      {0, 2, 3, 1},  // bottom
      {4, 5, 7, 6},  // top
      {0, 1, 5, 4},  // front
      {2, 6, 7, 3},  // back
      {0, 4, 6, 2},  // left
      {1, 3, 7, 5},  // right
  }};
  for (const auto& q : quads) {
    mesh.faces.push_back({q[0], q[1], q[2]});
    mesh.faces.push_back({q[0], q[2], q[3]});
  }
  return mesh;
}

/// Procedural object pool: size-normalized colored boxes of varied aspect
/// over furniture-scale classes. Deterministic in `seed`.
inline std::vector<virtfusion::objectpool::ObjectAsset> mock_pool(
    std::size_t count, std::size_t points_per_asset, std::uint64_t seed,
    const assetio::LabelMap& labels) {
  // Classes whose canonical height keeps footprints below the slot pitch.
  const std::uint32_t class_ids[] = {4, 5, 6, 7, 13, 17, 18, 19, 20};
  auto table = virtfusion::objectpool::SizeTable::from_label_map(labels, 0.95,
                                                                 1.05);
  std::vector<virtfusion::objectpool::ObjectAsset> pool;
  Rng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const double wx = rng.uniform(0.4, 1.2);
    const double wy = rng.uniform(0.4, 1.2);
    auto mesh = box_mesh(wx, wy, 1.0, true);
    auto cloud = assetio::sample_mesh(mesh, points_per_asset, rng);
    auto asset = virtfusion::objectpool::assign_class(
        std::move(cloud), class_ids[i % std::size(class_ids)], labels);
    asset = virtfusion::objectpool::normalize_size(asset, table, rng);
    asset.asset_id = "mock-" + std::to_string(i);
    pool.push_back(std::move(asset));
  }
  return pool;
}

}  // namespace vftest

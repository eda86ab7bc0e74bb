// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/assetio/mesh_sampling.hpp"

#include <algorithm>
#include <cmath>

#include "virtfusion/errors.hpp"

namespace virtfusion::assetio {

namespace {

using geometry::Vec3;

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 u = b - a;
  const Vec3 v = c - a;
  const Vec3 cross{u.y * v.z - u.z * v.y, u.z * v.x - u.x * v.z,
                   u.x * v.y - u.y * v.x};
  return 0.5 * cross.norm();
}

std::uint8_t to_byte(float unit) {
  const float scaled = unit * 255.0f;
  return static_cast<std::uint8_t>(
      std::clamp(std::lround(scaled), 0l, 255l));
}

}  // namespace

geometry::LabeledCloud sample_mesh(const MeshAsset& mesh, std::size_t n,
                                   Rng& rng) {
  if (n < 1) throw InvalidArgumentError("sample_mesh: n must be >= 1");
  if (mesh.faces.empty()) {
    throw InvalidArgumentError("sample_mesh: mesh has no faces");
  }

  // Cumulative area table for face selection.
  std::vector<double> cumulative(mesh.faces.size());
  double total = 0.0;
  for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& face = mesh.faces[f];
    total += triangle_area(mesh.vertices[face[0]], mesh.vertices[face[1]],
                           mesh.vertices[face[2]]);
    cumulative[f] = total;
  }
  if (!(total > 0.0)) {
    throw InvalidArgumentError("sample_mesh: all faces degenerate");
  }

  geometry::LabeledCloud cloud;
  cloud.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pick = rng.uniform() * total;
    const std::size_t f = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), pick) -
        cumulative.begin());
    const auto& face = mesh.faces[std::min(f, mesh.faces.size() - 1)];

    // Uniform barycentric coordinates by folding the unit square.
    double u = rng.uniform();
    double v = rng.uniform();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    const double w = 1.0 - u - v;

    const Vec3& a = mesh.vertices[face[0]];
    const Vec3& b = mesh.vertices[face[1]];
    const Vec3& c = mesh.vertices[face[2]];
    const Vec3 p = a * w + b * u + c * v;

    geometry::Color color{128, 128, 128};
    if (mesh.has_colors()) {
      const auto& ca = mesh.colors[face[0]];
      const auto& cb = mesh.colors[face[1]];
      const auto& cc = mesh.colors[face[2]];
      color = {to_byte(static_cast<float>(w * ca[0] + u * cb[0] + v * cc[0])),
               to_byte(static_cast<float>(w * ca[1] + u * cb[1] + v * cc[1])),
               to_byte(static_cast<float>(w * ca[2] + u * cb[2] + v * cc[2]))};
    }
    cloud.push_back(p, color, 0, 0);
  }
  return cloud;
}

}  // namespace virtfusion::assetio

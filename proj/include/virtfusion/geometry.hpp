// SPDX-License-Identifier: Apache-2.0
//
// Core point-cloud value types and the rigid-transform / bounding-box
// operations every other module builds on. All types are immutable values;
// operations are pure given an explicit Rng.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "virtfusion/rng.hpp"

namespace virtfusion::geometry {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const Vec3& o) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

struct Color {
  std::uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Color& o) const = default;
};

/// Colored points with per-point semantic and instance labels. The four
/// arrays are parallel: entry i of each describes the same point. Labels are
/// 32-bit in memory; the on-disk scene format narrows them to 16-bit and the
/// writer range-checks. Instance id 0 means unassigned.
struct LabeledCloud {
  std::vector<Vec3> points;
  std::vector<Color> colors;
  std::vector<std::uint32_t> sem;
  std::vector<std::uint32_t> ins;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  bool operator==(const LabeledCloud& o) const = default;

  /// Throws ValidationError unless the parallel arrays line up and every
  /// coordinate is finite. Callers at trust boundaries (parsers, samplers)
  /// invoke this; in-memory operations assume it.
  void check() const;

  void reserve(std::size_t n);
  void push_back(const Vec3& p, Color c, std::uint32_t s, std::uint32_t i);
  void append(const LabeledCloud& other);
};

struct Aabb {
  Vec3 min;
  Vec3 max;
  bool operator==(const Aabb& o) const = default;
};

/// Rotation about the +z (vertical) axis through `pivot`, followed by a
/// translation. Angle is normalized to [0, 2pi) on construction.
struct YawTransform {
  double angle = 0.0;
  Vec3 pivot;
  Vec3 translation;

  static YawTransform make(double angle, const Vec3& pivot,
                           const Vec3& translation);
};

/// Rotate every point about the transform pivot, then translate. Colors and
/// labels are untouched and keep their order.
LabeledCloud apply_transform(const LabeledCloud& cloud, const YawTransform& t);

/// Componentwise extrema of a non-empty cloud.
Aabb bounding_box(const LabeledCloud& cloud);

/// Mean of all points of a non-empty cloud.
Vec3 centroid(const LabeledCloud& cloud);

/// True iff the x and y intervals of both boxes, each inflated by `margin`
/// on both sides, intersect (closed intervals; touching counts). z is
/// ignored: placement is decided in bird view.
bool xy_overlap(const Aabb& a, const Aabb& b, double margin);

/// Concatenate clouds, preserving per-cloud point order.
LabeledCloud merge(const std::vector<LabeledCloud>& clouds);

/// Uniform sampling without replacement down to `target` points. Clouds at
/// or below the target are returned unchanged. Survivors keep their
/// color/sem/ins and their relative order.
LabeledCloud downsample(const LabeledCloud& cloud, std::size_t target,
                        Rng& rng);

}  // namespace virtfusion::geometry

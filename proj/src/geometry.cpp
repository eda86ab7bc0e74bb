// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

#include "virtfusion/errors.hpp"

namespace virtfusion::geometry {

void LabeledCloud::check() const {
  const std::size_t n = points.size();
  if (colors.size() != n || sem.size() != n || ins.size() != n) {
    throw ValidationError("labeled cloud: parallel arrays differ in length");
  }
  for (const Vec3& p : points) {
    if (!p.finite()) {
      throw ValidationError("labeled cloud: non-finite coordinate");
    }
  }
}

void LabeledCloud::reserve(std::size_t n) {
  points.reserve(n);
  colors.reserve(n);
  sem.reserve(n);
  ins.reserve(n);
}

void LabeledCloud::push_back(const Vec3& p, Color c, std::uint32_t s,
                             std::uint32_t i) {
  points.push_back(p);
  colors.push_back(c);
  sem.push_back(s);
  ins.push_back(i);
}

void LabeledCloud::append(const LabeledCloud& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  colors.insert(colors.end(), other.colors.begin(), other.colors.end());
  sem.insert(sem.end(), other.sem.begin(), other.sem.end());
  ins.insert(ins.end(), other.ins.begin(), other.ins.end());
}

YawTransform YawTransform::make(double angle, const Vec3& pivot,
                                const Vec3& translation) {
  if (!std::isfinite(angle) || !pivot.finite() || !translation.finite()) {
    throw InvalidArgumentError("yaw transform: non-finite parameter");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;  // fmod rounding at the seam
  return YawTransform{a, pivot, translation};
}

LabeledCloud apply_transform(const LabeledCloud& cloud, const YawTransform& t) {
  if (!std::isfinite(t.angle) || !t.pivot.finite() || !t.translation.finite()) {
    throw InvalidArgumentError("apply_transform: non-finite parameter");
  }
  LabeledCloud out = cloud;
  if (t.angle == 0.0) {
    // Exact pass-through; avoids re-rounding p - pivot + pivot.
    for (Vec3& p : out.points) {
      p.x += t.translation.x;
      p.y += t.translation.y;
      p.z += t.translation.z;
    }
    return out;
  }

  const double c = std::cos(t.angle);
  const double s = std::sin(t.angle);
  for (Vec3& p : out.points) {
    const double dx = p.x - t.pivot.x;
    const double dy = p.y - t.pivot.y;
    p.x = c * dx - s * dy + t.pivot.x + t.translation.x;
    p.y = s * dx + c * dy + t.pivot.y + t.translation.y;
    p.z += t.translation.z;
  }
  return out;
}

Aabb bounding_box(const LabeledCloud& cloud) {
  if (cloud.empty()) {
    throw InvalidArgumentError("bounding_box: empty cloud");
  }
  Aabb box{cloud.points.front(), cloud.points.front()};
  for (const Vec3& p : cloud.points) {
    box.min.x = std::min(box.min.x, p.x);
    box.min.y = std::min(box.min.y, p.y);
    box.min.z = std::min(box.min.z, p.z);
    box.max.x = std::max(box.max.x, p.x);
    box.max.y = std::max(box.max.y, p.y);
    box.max.z = std::max(box.max.z, p.z);
  }
  return box;
}

Vec3 centroid(const LabeledCloud& cloud) {
  if (cloud.empty()) {
    throw InvalidArgumentError("centroid: empty cloud");
  }
  Vec3 sum;
  for (const Vec3& p : cloud.points) sum = sum + p;
  return sum * (1.0 / static_cast<double>(cloud.size()));
}

bool xy_overlap(const Aabb& a, const Aabb& b, double margin) {
  if (!(margin >= 0.0)) {
    throw InvalidArgumentError("xy_overlap: margin must be >= 0");
  }
  const bool x = a.max.x + margin >= b.min.x - margin &&
                 b.max.x + margin >= a.min.x - margin;
  const bool y = a.max.y + margin >= b.min.y - margin &&
                 b.max.y + margin >= a.min.y - margin;
  return x && y;
}

LabeledCloud merge(const std::vector<LabeledCloud>& clouds) {
  std::size_t total = 0;
  for (const LabeledCloud& c : clouds) total += c.size();

  LabeledCloud out;
  out.reserve(total);
  for (const LabeledCloud& c : clouds) out.append(c);
  return out;
}

LabeledCloud downsample(const LabeledCloud& cloud, std::size_t target,
                        Rng& rng) {
  if (cloud.size() <= target) return cloud;

  // Shuffle indices, keep the first `target`, restore ascending order so
  // survivor order matches the input.
  std::vector<std::uint32_t> idx(cloud.size());
  std::iota(idx.begin(), idx.end(), 0u);
  rng.shuffle(idx);
  idx.resize(target);
  std::sort(idx.begin(), idx.end());

  LabeledCloud out;
  out.reserve(target);
  for (std::uint32_t i : idx) {
    out.push_back(cloud.points[i], cloud.colors[i], cloud.sem[i],
                  cloud.ins[i]);
  }
  return out;
}

}  // namespace virtfusion::geometry

// SPDX-License-Identifier: Apache-2.0
//
// The class-labeled object pool: per-class size regularization, label
// assignment, generation-capacity accounting, and class-distribution
// statistics over scene sets. A built pool is an immutable snapshot; reads
// are freely concurrent.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "virtfusion/assetio/labelmap.hpp"
#include "virtfusion/assetio/manifest.hpp"
#include "virtfusion/assetio/scene_ply.hpp"
#include "virtfusion/geometry.hpp"
#include "virtfusion/rng.hpp"

namespace virtfusion::objectpool {

/// One pooled object: every point carries the class id as sem and 0 as ins.
struct ObjectAsset {
  geometry::LabeledCloud cloud;
  std::uint32_t class_id = 0;
  std::string asset_id;
  std::vector<assetio::StageRecord> provenance;
};

struct SizeEntry {
  double canonical_height_m = 1.0;
  double jitter_lo = 1.0;
  double jitter_hi = 1.0;
};

/// Per-class canonical heights with a uniform jitter band.
class SizeTable {
public:
  SizeTable() = default;

  /// Canonical heights from the label map, one shared jitter band.
  static SizeTable from_label_map(const assetio::LabelMap& labels,
                                  double jitter_lo = 0.9,
                                  double jitter_hi = 1.1);

  void set(std::uint32_t class_id, SizeEntry entry);
  bool contains(std::uint32_t class_id) const;
  const SizeEntry& at(std::uint32_t class_id) const;

private:
  std::map<std::uint32_t, SizeEntry> entries_;
};

/// Generation capacity: total distinct objects = C * N * M * P.
struct CapacityReport {
  std::uint64_t classes = 0;            // C
  std::uint64_t structures = 0;         // N per class
  std::uint64_t textures = 0;           // M per structure
  std::uint64_t drag_variants = 0;      // P per texture
  std::uint64_t total = 0;
};

struct ClassStat {
  std::uint32_t class_id = 0;
  std::uint64_t point_count = 0;
  std::uint64_t object_count = 0;  // distinct (scene, instance) pairs
  double fraction = 0.0;
  bool long_tail = false;          // fraction below kLongTailFraction
};

/// Classes contributing less than this fraction of all points are flagged
/// as long-tail.
inline constexpr double kLongTailFraction = 0.01;

struct ClassStats {
  std::vector<ClassStat> per_class;  // ascending class id, nonzero counts only
  std::uint64_t total_points = 0;
};

/// Broadcasts class_id over sem, zeroes ins. The class must exist in the
/// active label map.
ObjectAsset assign_class(geometry::LabeledCloud cloud, std::uint32_t class_id,
                         const assetio::LabelMap& labels);

/// Uniformly rescales the cloud about its centroid until the z-extent equals
/// canonical_height * u with u ~ U[jitter_lo, jitter_hi], then rests it on
/// the floor (min z = 0) centered at the origin (centroid x = y = 0).
ObjectAsset normalize_size(ObjectAsset asset, const SizeTable& table,
                           Rng& rng);

/// Exact product C*N*M*P; overflow raises rather than wrapping.
CapacityReport capacity(std::uint64_t classes, std::uint64_t structures,
                        std::uint64_t textures, std::uint64_t drag_variants);

/// Per-class tallies over a scene set. Fractions are over the grand point
/// total and sum to 1 when any points exist.
ClassStats class_stats(std::span<const assetio::SceneFile> scenes);

std::string class_stats_json(const ClassStats& stats,
                             const assetio::LabelMap* labels = nullptr);

/// Horizontal bar chart of class point fractions.
std::string class_stats_svg(const ClassStats& stats,
                            const assetio::LabelMap* labels = nullptr);

}  // namespace virtfusion::objectpool

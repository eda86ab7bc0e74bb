// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/objectpool.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>

#include <json.hpp>

#include "virtfusion/errors.hpp"

namespace virtfusion::objectpool {

SizeTable SizeTable::from_label_map(const assetio::LabelMap& labels,
                                    double jitter_lo, double jitter_hi) {
  SizeTable table;
  for (const auto& c : labels.classes()) {
    table.set(c.id, {c.canonical_height_m, jitter_lo, jitter_hi});
  }
  return table;
}

void SizeTable::set(std::uint32_t class_id, SizeEntry entry) {
  if (!(entry.canonical_height_m > 0.0)) {
    throw InvalidArgumentError("size table: canonical height must be > 0");
  }
  if (!(entry.jitter_lo > 0.0 && entry.jitter_lo <= entry.jitter_hi)) {
    throw InvalidArgumentError("size table: need 0 < jitter_lo <= jitter_hi");
  }
  entries_[class_id] = entry;
}

bool SizeTable::contains(std::uint32_t class_id) const {
  return entries_.count(class_id) != 0;
}

const SizeEntry& SizeTable::at(std::uint32_t class_id) const {
  const auto it = entries_.find(class_id);
  if (it == entries_.end()) {
    throw ConfigError("size table: class " + std::to_string(class_id) +
                      " not configured");
  }
  return it->second;
}

ObjectAsset assign_class(geometry::LabeledCloud cloud, std::uint32_t class_id,
                         const assetio::LabelMap& labels) {
  if (!labels.contains(class_id)) {
    throw ConfigError("assign_class: class " + std::to_string(class_id) +
                      " not in the active label map");
  }
  std::fill(cloud.sem.begin(), cloud.sem.end(), class_id);
  std::fill(cloud.ins.begin(), cloud.ins.end(), 0u);
  ObjectAsset asset;
  asset.cloud = std::move(cloud);
  asset.class_id = class_id;
  return asset;
}

ObjectAsset normalize_size(ObjectAsset asset, const SizeTable& table,
                           Rng& rng) {
  if (asset.cloud.empty()) {
    throw InvalidArgumentError("normalize_size: empty cloud");
  }
  const SizeEntry& entry = table.at(asset.class_id);

  const geometry::Aabb box = geometry::bounding_box(asset.cloud);
  const double extent = box.max.z - box.min.z;
  if (!(extent > 0.0)) {
    throw InvalidArgumentError("normalize_size: degenerate asset, zero z-extent");
  }

  const double u = rng.uniform(entry.jitter_lo, entry.jitter_hi);
  const double scale = entry.canonical_height_m * u / extent;
  const geometry::Vec3 c = geometry::centroid(asset.cloud);

  double min_z = std::numeric_limits<double>::infinity();
  for (auto& p : asset.cloud.points) {
    p = c + (p - c) * scale;
    min_z = std::min(min_z, p.z);
  }
  for (auto& p : asset.cloud.points) {
    p.x -= c.x;
    p.y -= c.y;
    p.z -= min_z;
  }
  return asset;
}

CapacityReport capacity(std::uint64_t classes, std::uint64_t structures,
                        std::uint64_t textures, std::uint64_t drag_variants) {
  CapacityReport report{classes, structures, textures, drag_variants, 0};
  std::uint64_t total = classes;
  for (std::uint64_t factor : {structures, textures, drag_variants}) {
    if (total != 0 && factor > 0 &&
        total > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw OverflowError("capacity: product exceeds 64-bit range");
    }
    total *= factor;
  }
  report.total = total;
  return report;
}

ClassStats class_stats(std::span<const assetio::SceneFile> scenes) {
  std::map<std::uint32_t, ClassStat> acc;
  std::map<std::uint32_t, std::set<std::pair<std::size_t, std::uint32_t>>>
      objects;
  std::uint64_t total = 0;

  for (std::size_t s = 0; s < scenes.size(); ++s) {
    const auto& cloud = scenes[s].cloud;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      auto& stat = acc[cloud.sem[i]];
      stat.class_id = cloud.sem[i];
      stat.point_count++;
      ++total;
      if (cloud.ins[i] != 0) {
        objects[cloud.sem[i]].insert({s, cloud.ins[i]});
      }
    }
  }

  ClassStats stats;
  stats.total_points = total;
  for (auto& [id, stat] : acc) {
    stat.object_count = objects.count(id) ? objects[id].size() : 0;
    stat.fraction =
        total == 0 ? 0.0
                   : static_cast<double>(stat.point_count) /
                         static_cast<double>(total);
    stat.long_tail = stat.fraction < kLongTailFraction;
    stats.per_class.push_back(stat);
  }
  return stats;
}

std::string class_stats_json(const ClassStats& stats,
                             const assetio::LabelMap* labels) {
  nlohmann::ordered_json doc;
  doc["total_points"] = stats.total_points;
  doc["long_tail_threshold"] = kLongTailFraction;
  doc["classes"] = nlohmann::ordered_json::array();
  for (const auto& s : stats.per_class) {
    nlohmann::ordered_json c;
    c["class_id"] = s.class_id;
    if (labels && labels->contains(s.class_id)) {
      c["class_name"] = labels->at(s.class_id).name;
    }
    c["point_count"] = s.point_count;
    c["object_count"] = s.object_count;
    c["fraction"] = s.fraction;
    c["long_tail"] = s.long_tail;
    doc["classes"].push_back(std::move(c));
  }
  return doc.dump(2) + "\n";
}

std::string class_stats_svg(const ClassStats& stats,
                            const assetio::LabelMap* labels) {
  const int bar_h = 18, gap = 4, label_w = 140, chart_w = 420;
  const int height =
      static_cast<int>(stats.per_class.size()) * (bar_h + gap) + gap;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(label_w + chart_w + 80) + "\" height=\"" +
         std::to_string(height) + "\">\n";
  int y = gap;
  for (const auto& s : stats.per_class) {
    std::string name = labels && labels->contains(s.class_id)
                           ? labels->at(s.class_id).name
                           : "class " + std::to_string(s.class_id);
    const int w = std::max(1, static_cast<int>(s.fraction * chart_w));
    const char* fill = s.long_tail ? "#d62728" : "#1f77b4";
    svg += "  <text x=\"4\" y=\"" + std::to_string(y + bar_h - 5) +
           "\" font-size=\"12\" font-family=\"sans-serif\">" + name +
           "</text>\n";
    svg += "  <rect x=\"" + std::to_string(label_w) + "\" y=\"" +
           std::to_string(y) + "\" width=\"" + std::to_string(w) +
           "\" height=\"" + std::to_string(bar_h) + "\" fill=\"" + fill +
           "\"/>\n";
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.2f%%", s.fraction * 100.0);
    svg += "  <text x=\"" + std::to_string(label_w + w + 6) + "\" y=\"" +
           std::to_string(y + bar_h - 5) +
           "\" font-size=\"12\" font-family=\"sans-serif\">" + pct +
           "</text>\n";
    y += bar_h + gap;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace virtfusion::objectpool

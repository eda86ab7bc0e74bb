// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/composer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>

#include <json.hpp>

#include "virtfusion/errors.hpp"
#include "virtfusion/parallel.hpp"

namespace virtfusion::composer {

using geometry::Aabb;
using geometry::LabeledCloud;
using geometry::Vec3;

SceneTemplate SceneTemplate::grid3x3(double pitch) {
  SceneTemplate tmpl;
  tmpl.pitch = pitch;
  tmpl.template_id = "grid3x3@" + std::to_string(pitch);
  int id = 1;
  for (int row = 0; row < 3; ++row) {
    for (int col = 0; col < 3; ++col) {
      tmpl.slots.push_back(
          {id++, (col - 1) * pitch, (1 - row) * pitch});
    }
  }
  return tmpl;
}

std::optional<Vec3> resolve_shift(const std::vector<Aabb>& placed,
                                  const Aabb& candidate, double margin,
                                  double shift_step, double max_shift) {
  if (!(shift_step > 0.0)) {
    throw InvalidArgumentError("resolve_shift: shift_step must be > 0");
  }
  auto clear_at = [&](double dx, double dy) {
    Aabb moved = candidate;
    moved.min.x += dx;
    moved.max.x += dx;
    moved.min.y += dy;
    moved.max.y += dy;
    for (const Aabb& other : placed) {
      if (geometry::xy_overlap(moved, other, margin)) return false;
    }
    return true;
  };

  if (clear_at(0.0, 0.0)) return Vec3{0.0, 0.0, 0.0};

  const long max_steps = static_cast<long>(std::floor(max_shift / shift_step));
  for (long s = 1; s <= max_steps; ++s) {
    const double d = s * shift_step;
    if (clear_at(d, 0.0)) return Vec3{d, 0.0, 0.0};
  }
  for (long s = 1; s <= max_steps; ++s) {
    const double d = s * shift_step;
    if (clear_at(0.0, d)) return Vec3{0.0, d, 0.0};
  }
  return std::nullopt;
}

namespace {

LabeledCloud make_floor_slab(const Aabb& extent, double margin,
                             std::uint32_t floor_class, Rng& rng) {
  const double x0 = extent.min.x - margin, x1 = extent.max.x + margin;
  const double y0 = extent.min.y - margin, y1 = extent.max.y + margin;
  const double area = std::max(0.1, (x1 - x0) * (y1 - y0));
  const std::size_t n = static_cast<std::size_t>(area * 1000.0);  // 1k pts/m^2

  LabeledCloud slab;
  slab.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    slab.push_back({rng.uniform(x0, x1), rng.uniform(y0, y1), 0.0},
                   {200, 200, 200}, floor_class, 0);
  }
  return slab;
}

}  // namespace

ComposedScene compose(const std::vector<objectpool::ObjectAsset>& pool,
                      const SceneTemplate& tmpl, const ComposerConfig& cfg,
                      Rng& rng) {
  if (pool.empty()) throw ConfigError("compose: object pool is empty");
  if (cfg.k != static_cast<int>(tmpl.slots.size())) {
    throw ConfigError("compose: k=" + std::to_string(cfg.k) +
                      " does not match template with " +
                      std::to_string(tmpl.slots.size()) + " slots");
  }
  if (!(cfg.tau > 0)) throw ConfigError("compose: tau must be > 0");

  ComposedScene out;

  struct Placed {
    LabeledCloud cloud;
    Aabb box;
    std::uint32_t class_id;
  };
  std::vector<Placed> placed;
  std::vector<Aabb> placed_boxes;

  for (const auto& slot : tmpl.slots) {
    // Draw order per slot is fixed: object pick, then yaw.
    const std::size_t pick = rng.uniform_index(pool.size());
    const double yaw = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const objectpool::ObjectAsset& asset = pool[pick];

    // Rotate about the object's own vertical centroid axis, then translate
    // the centroid onto the slot center with the base resting at z = 0.
    const Vec3 c = geometry::centroid(asset.cloud);
    const Aabb original_box = geometry::bounding_box(asset.cloud);
    const auto transform = geometry::YawTransform::make(
        yaw, c, {slot.cx - c.x, slot.cy - c.y, -original_box.min.z});
    LabeledCloud cloud = geometry::apply_transform(asset.cloud, transform);
    Aabb box = geometry::bounding_box(cloud);

    const auto shift =
        resolve_shift(placed_boxes, box, cfg.margin, cfg.shift_step,
                      cfg.max_shift);
    if (!shift.has_value()) {
      out.skips.push_back({slot.location_id, asset.asset_id,
                           "shift budget exhausted along +x and +y"});
      continue;
    }
    if (shift->x != 0.0 || shift->y != 0.0) {
      for (Vec3& p : cloud.points) {
        p.x += shift->x;
        p.y += shift->y;
      }
      box.min.x += shift->x;
      box.max.x += shift->x;
      box.min.y += shift->y;
      box.max.y += shift->y;
    }

    placed.push_back({std::move(cloud), box, asset.class_id});
    placed_boxes.push_back(box);
  }

  // Skipped slots do not consume ids: survivors get 1..placed in slot order.
  std::vector<LabeledCloud> parts;
  parts.reserve(placed.size() + 1);
  for (std::size_t i = 0; i < placed.size(); ++i) {
    const std::uint32_t instance = static_cast<std::uint32_t>(i + 1);
    auto& item = placed[i];
    std::fill(item.cloud.sem.begin(), item.cloud.sem.end(), item.class_id);
    std::fill(item.cloud.ins.begin(), item.cloud.ins.end(), instance);
    out.scene.meta.instance_classes[instance] = item.class_id;
    parts.push_back(std::move(item.cloud));
  }

  if (cfg.floor && !placed_boxes.empty()) {
    Aabb extent = placed_boxes.front();
    for (const Aabb& b : placed_boxes) {
      extent.min.x = std::min(extent.min.x, b.min.x);
      extent.min.y = std::min(extent.min.y, b.min.y);
      extent.max.x = std::max(extent.max.x, b.max.x);
      extent.max.y = std::max(extent.max.y, b.max.y);
    }
    parts.push_back(make_floor_slab(extent, cfg.margin, cfg.floor_class, rng));
    out.scene.meta.instance_classes[0] = cfg.floor_class;
  }

  LabeledCloud merged = geometry::merge(parts);
  out.raw_point_count = merged.size();
  if (merged.size() > cfg.tau) {
    merged = geometry::downsample(merged, cfg.tau, rng);
  }

  // Whole-scene yaw about the vertical axis through the scene centroid.
  double scene_yaw = 0.0;
  if (!merged.empty()) {
    scene_yaw = rng.uniform(0.0, 2.0 * std::numbers::pi);
    merged = geometry::apply_transform(
        merged,
        geometry::YawTransform::make(scene_yaw, geometry::centroid(merged),
                                     {0, 0, 0}));
  }

  out.scene.cloud = std::move(merged);
  out.scene.meta.template_id = tmpl.template_id;
  out.scene.meta.seed = cfg.seed;
  out.scene.meta.scene_yaw = scene_yaw;
  return out;
}

ValidationReport validate_scene(const assetio::SceneFile& scene,
                                const ComposerConfig& cfg, double margin) {
  ValidationReport report;
  const auto& cloud = scene.cloud;
  const auto& map = scene.meta.instance_classes;

  // Recover the placement frame. Disjointness is translation invariant, so
  // un-rotating about the origin is enough; the pivot does not matter.
  LabeledCloud frame = cloud;
  if (scene.meta.scene_yaw != 0.0) {
    frame = geometry::apply_transform(
        cloud, geometry::YawTransform::make(-scene.meta.scene_yaw, {0, 0, 0},
                                            {0, 0, 0}));
  }

  // Per-instance boxes.
  std::map<std::uint32_t, Aabb> boxes;
  std::map<std::uint32_t, bool> started;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const std::uint32_t ins = frame.ins[i];
    if (ins == 0) continue;
    const Vec3& p = frame.points[i];
    auto& box = boxes[ins];
    if (!started[ins]) {
      box = {p, p};
      started[ins] = true;
    } else {
      box.min.x = std::min(box.min.x, p.x);
      box.min.y = std::min(box.min.y, p.y);
      box.min.z = std::min(box.min.z, p.z);
      box.max.x = std::max(box.max.x, p.x);
      box.max.y = std::max(box.max.y, p.y);
      box.max.z = std::max(box.max.z, p.z);
    }
  }

  for (auto a = boxes.begin(); a != boxes.end(); ++a) {
    for (auto b = std::next(a); b != boxes.end(); ++b) {
      if (geometry::xy_overlap(a->second, b->second, margin)) {
        report.violations.push_back(
            {"overlap",
             "instances " + std::to_string(a->first) + " and " +
                 std::to_string(b->first) + " have intersecting footprints",
             {a->first, b->first}});
      }
    }
  }

  // Instance ids present and mapped must both be exactly 1..m.
  std::set<std::uint32_t> present;
  for (auto ins : cloud.ins) {
    if (ins != 0) present.insert(ins);
  }
  std::set<std::uint32_t> mapped;
  for (const auto& [ins, cls] : map) {
    if (ins != 0) mapped.insert(ins);
  }
  const std::uint32_t m =
      mapped.empty() ? 0 : *mapped.rbegin();
  auto contiguous = [m](const std::set<std::uint32_t>& ids) {
    if (ids.size() != m) return false;
    std::uint32_t expect = 1;
    for (auto id : ids) {
      if (id != expect++) return false;
    }
    return true;
  };
  if (!contiguous(mapped) || present != mapped) {
    report.violations.push_back(
        {"instance-ids",
         "instance ids are not contiguous from 1 across points and map",
         {}});
  }

  // sem <-> instance map consistency (reported, not thrown).
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const std::uint32_t ins = cloud.ins[i];
    const auto it = map.find(ins);
    const std::uint32_t expected =
        it != map.end() ? it->second : (ins == 0 ? 0 : 0xffffffffu);
    if (cloud.sem[i] != expected) {
      report.violations.push_back(
          {"label-consistency",
           "point " + std::to_string(i) + " sem " +
               std::to_string(cloud.sem[i]) +
               " disagrees with instance map for instance " +
               std::to_string(ins),
           {ins}});
      break;  // one entry per scene is enough to flag it
    }
  }

  if (cloud.size() > cfg.tau) {
    report.violations.push_back(
        {"budget",
         "scene has " + std::to_string(cloud.size()) +
             " points, budget is " + std::to_string(cfg.tau),
         {}});
  }
  return report;
}

BatchResult generate_batch(const std::vector<objectpool::ObjectAsset>& pool,
                           const SceneTemplate& tmpl,
                           const ComposerConfig& cfg, std::size_t count,
                           std::size_t workers) {
  struct Item {
    assetio::SceneFile scene;
    BatchSceneSummary summary;
  };

  auto items = parallel_map<Item>(count, workers, [&](std::size_t i) {
    const std::uint64_t scene_seed = derive_seed(cfg.seed, i);
    Rng rng(scene_seed);

    ComposerConfig scene_cfg = cfg;
    scene_cfg.seed = scene_seed;
    ComposedScene composed = compose(pool, tmpl, scene_cfg, rng);

    char name[32];
    std::snprintf(name, sizeof name, "scene_%05zu", i);
    composed.scene.meta.scene_id = name;

    Item item;
    item.summary.index = i;
    item.summary.scene_id = name;
    item.summary.seed = scene_seed;
    item.summary.point_count = composed.scene.cloud.size();
    item.summary.skips = composed.skips;
    item.summary.raw_point_count = composed.raw_point_count;
    item.scene = std::move(composed.scene);
    return item;
  });

  BatchResult batch;
  batch.scenes.reserve(count);
  batch.summaries.reserve(count);
  for (auto& item : items) {
    batch.scenes.push_back(std::move(item.scene));
    batch.summaries.push_back(std::move(item.summary));
  }
  return batch;
}

std::string batch_summary_json(const BatchResult& batch,
                               const ComposerConfig& cfg) {
  nlohmann::ordered_json doc;
  doc["scene_count"] = batch.scenes.size();
  doc["seed"] = cfg.seed;
  doc["k"] = cfg.k;
  doc["tau"] = cfg.tau;
  doc["margin"] = cfg.margin;
  doc["scenes"] = nlohmann::ordered_json::array();
  for (const auto& s : batch.summaries) {
    nlohmann::ordered_json entry;
    entry["index"] = s.index;
    entry["scene_id"] = s.scene_id;
    entry["seed"] = s.seed;
    entry["point_count"] = s.point_count;
    entry["skips"] = nlohmann::ordered_json::array();
    for (const auto& skip : s.skips) {
      entry["skips"].push_back({{"location_id", skip.location_id},
                                {"asset_id", skip.asset_id},
                                {"reason", skip.reason}});
    }
    doc["scenes"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace virtfusion::composer

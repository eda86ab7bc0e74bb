// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/dragplan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "virtfusion/errors.hpp"

namespace virtfusion::dragplan {

DragPlan plan_drag(const ObjectMask& mask, const DragConfig& cfg, Rng& rng) {
  if (mask.width <= 0 || mask.height <= 0 ||
      mask.bitmap.size() !=
          static_cast<std::size_t>(mask.width) * mask.height) {
    throw InvalidArgumentError("plan_drag: malformed mask");
  }
  if (cfg.n_handles != 1 && cfg.n_handles != 2) {
    throw InvalidArgumentError("plan_drag: n_handles must be 1 or 2");
  }
  if (!(cfg.mu >= 0.0) || !(cfg.sigma >= 0.0)) {
    throw InvalidArgumentError("plan_drag: mu and sigma must be >= 0");
  }

  std::vector<std::uint32_t> foreground;
  for (std::uint32_t i = 0; i < mask.bitmap.size(); ++i) {
    if (mask.bitmap[i]) foreground.push_back(i);
  }
  if (foreground.empty()) {
    throw InvalidArgumentError("plan_drag: mask has no foreground pixels");
  }
  if (foreground.size() < static_cast<std::size_t>(cfg.n_handles)) {
    throw InvalidArgumentError(
        "plan_drag: fewer foreground pixels than requested handles");
  }

  DragPlan plan;
  for (int h = 0; h < cfg.n_handles; ++h) {
    // Without replacement: swap the chosen pixel to the tail.
    const std::size_t remaining = foreground.size() - h;
    const std::size_t pick = rng.uniform_index(remaining);
    std::swap(foreground[pick], foreground[remaining - 1]);
    const std::uint32_t idx = foreground[remaining - 1];

    const double hx = static_cast<double>(idx % mask.width);
    const double hy = static_cast<double>(idx / mask.width);

    const double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const double distance = std::max(0.0, rng.normal(cfg.mu, cfg.sigma));

    DragInstruction inst;
    inst.handle_x = hx;
    inst.handle_y = hy;
    inst.target_x = std::clamp(hx + distance * std::cos(theta), 0.0,
                               static_cast<double>(mask.width - 1));
    inst.target_y = std::clamp(hy + distance * std::sin(theta), 0.0,
                               static_cast<double>(mask.height - 1));
    plan.instructions.push_back(inst);
    plan.pre_clamp_distances.push_back(distance);
  }
  return plan;
}

std::string serialize_plan(const DragPlan& plan) {
  nlohmann::ordered_json doc;
  doc["image_ref"] = plan.image_ref;
  doc["instructions"] = nlohmann::ordered_json::array();
  for (const auto& inst : plan.instructions) {
    doc["instructions"].push_back(
        {{"handle", {inst.handle_x, inst.handle_y}},
         {"target", {inst.target_x, inst.target_y}}});
  }
  return doc.dump();
}

namespace {

void read_pair(const nlohmann::json& arr, const char* what, double& x,
               double& y) {
  if (!arr.is_array() || arr.size() != 2 || !arr[0].is_number() ||
      !arr[1].is_number()) {
    throw ParseError(std::string("drag plan: ") + what +
                     " must be a [x, y] number pair");
  }
  x = arr[0].get<double>();
  y = arr[1].get<double>();
  if (!std::isfinite(x) || !std::isfinite(y) || x < 0.0 || y < 0.0) {
    throw ParseError(std::string("drag plan: ") + what +
                     " coordinates out of bounds");
  }
}

}  // namespace

DragPlan deserialize_plan(std::string_view bytes) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("drag plan: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("image_ref") ||
      !doc["image_ref"].is_string() || !doc.contains("instructions") ||
      !doc["instructions"].is_array()) {
    throw ParseError("drag plan: expected {image_ref, instructions}");
  }
  DragPlan plan;
  plan.image_ref = doc["image_ref"].get<std::string>();
  for (const auto& item : doc["instructions"]) {
    if (!item.is_object() || !item.contains("handle") ||
        !item.contains("target")) {
      throw ParseError("drag plan: instruction needs handle and target");
    }
    DragInstruction inst;
    read_pair(item["handle"], "handle", inst.handle_x, inst.handle_y);
    read_pair(item["target"], "target", inst.target_x, inst.target_y);
    plan.instructions.push_back(inst);
  }
  return plan;
}

}  // namespace virtfusion::dragplan

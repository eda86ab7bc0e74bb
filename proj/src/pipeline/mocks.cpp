// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/pipeline/mocks.hpp"

#include <algorithm>
#include <cmath>

#include "virtfusion/assetio/obj_io.hpp"
#include "virtfusion/diffmath.hpp"
#include "virtfusion/dragplan.hpp"
#include "virtfusion/errors.hpp"
#include "virtfusion/pipeline/image.hpp"
#include "virtfusion/promptgen.hpp"
#include "virtfusion/rng.hpp"

namespace virtfusion::pipeline {

namespace mock {

namespace {

constexpr int kImageSize = 64;

std::uint64_t seed_from(const std::string& text) { return hash_seed(text); }

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

std::string text_to_image(const nlohmann::json& params) {
  const std::string prompt = params.value("prompt", "");
  const std::uint64_t salt = params.value("seed", 0ull);
  Rng rng(mix64(seed_from(prompt) ^ salt));

  // Reverse walk: start from noise, repeatedly take the predicted posterior
  // mean and re-inject the fixed per-step variance, stop noiseless at t=1.
  const auto sched =
      diffmath::build_schedule(diffmath::linear_betas(10, 0.02, 0.3));
  const std::size_t n = kImageSize * kImageSize * 3;

  std::vector<double> x(n);
  for (auto& v : x) v = rng.normal(0.0, 1.0);

  std::vector<double> eps_pred(n);
  for (std::size_t t = sched.timesteps(); t >= 1; --t) {
    for (auto& v : eps_pred) v = rng.normal(0.0, 1.0);  // stand-in network
    x = diffmath::posterior_mean(x, t, eps_pred, sched);
    if (t > 1) {
      const double sigma = std::sqrt(diffmath::fixed_variance(t, sched));
      for (auto& v : x) v += sigma * rng.normal(0.0, 1.0);
    }
  }

  ImageRgb8 image;
  image.width = kImageSize;
  image.height = kImageSize;
  image.pixels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    image.pixels[i] = static_cast<std::uint8_t>(
        std::lround(255.0 * sigmoid(1.5 * x[i])));
  }
  return encode_png(image);
}

std::string depth_estimate(std::string_view image_png) {
  const ImageRgb8 image = decode_png_rgb8(image_png);
  ImageGray16 depth;
  depth.width = image.width;
  depth.height = image.height;
  depth.pixels.resize(static_cast<std::size_t>(image.width) * image.height);

  const double cx = (image.width - 1) / 2.0;
  const double cy = (image.height - 1) / 2.0;
  const double max_r = std::sqrt(cx * cx + cy * cy);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const double r = std::sqrt((x - cx) * (x - cx) + (y - cy) * (y - cy));
      depth.pixels[static_cast<std::size_t>(y) * image.width + x] =
          static_cast<std::uint16_t>(std::lround(65535.0 * (1.0 - r / max_r)));
    }
  }
  return encode_png(depth);
}

std::string texture_augment(std::string_view image_png,
                            std::string_view depth_png,
                            const nlohmann::json& params) {
  ImageRgb8 image = decode_png_rgb8(image_png);
  const ImageGray16 depth = decode_png_gray16(depth_png);
  if (depth.width != image.width || depth.height != image.height) {
    throw StageError("texture_augment: image/depth size mismatch");
  }

  const std::string prompt = params.value("prompt", "");
  Rng rng(seed_from(prompt));
  const double r_mix = rng.uniform(0.2, 1.0);
  const double g_mix = rng.uniform(0.2, 1.0);
  const double b_mix = rng.uniform(0.2, 1.0);

  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      std::uint8_t* px = image.at(x, y);
      // Structure (luminance, dampened by depth) survives; chroma follows
      // the prompt palette.
      const double lum =
          (0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]) / 255.0;
      const double d =
          depth.pixels[static_cast<std::size_t>(y) * image.width + x] /
          65535.0;
      const double base = 255.0 * (0.25 + 0.75 * lum) * (0.5 + 0.5 * d);
      px[0] = static_cast<std::uint8_t>(std::clamp(base * r_mix, 0.0, 255.0));
      px[1] = static_cast<std::uint8_t>(std::clamp(base * g_mix, 0.0, 255.0));
      px[2] = static_cast<std::uint8_t>(std::clamp(base * b_mix, 0.0, 255.0));
    }
  }
  return encode_png(image);
}

std::string drag_edit(std::string_view image_png,
                      const nlohmann::json& params) {
  ImageRgb8 image = decode_png_rgb8(image_png);
  if (!params.contains("plan")) {
    throw StageError("drag_edit: missing plan parameter");
  }
  const dragplan::DragPlan plan =
      dragplan::deserialize_plan(params["plan"].get<std::string>());

  const ImageRgb8 source = image;
  constexpr double kRadius = 12.0;
  for (const auto& inst : plan.instructions) {
    const double dx = inst.target_x - inst.handle_x;
    const double dy = inst.target_y - inst.handle_y;
    for (int y = 0; y < image.height; ++y) {
      for (int x = 0; x < image.width; ++x) {
        const double rx = x - inst.target_x;
        const double ry = y - inst.target_y;
        const double dist = std::sqrt(rx * rx + ry * ry);
        if (dist >= kRadius) continue;
        // Pixels near the target pull content from toward the handle,
        // strongest at the center.
        const double w = 1.0 - dist / kRadius;
        const int sx = std::clamp(
            static_cast<int>(std::lround(x - w * dx)), 0, image.width - 1);
        const int sy = std::clamp(
            static_cast<int>(std::lround(y - w * dy)), 0, image.height - 1);
        const std::uint8_t* from = source.at(sx, sy);
        std::uint8_t* to = image.at(x, y);
        to[0] = from[0];
        to[1] = from[1];
        to[2] = from[2];
      }
    }
  }
  return encode_png(image);
}

std::string image_to_3d(std::string_view image_png,
                        const nlohmann::json& params) {
  const ImageRgb8 image = decode_png_rgb8(image_png);
  (void)params;  // remove_background is honored trivially by the mock

  // Height field on a subsampled grid: z follows luminance, colors copy
  // the pixels. Grid cells triangulate into two faces each.
  constexpr int kGrid = 32;
  const double step_x =
      static_cast<double>(image.width - 1) / (kGrid - 1);
  const double step_y =
      static_cast<double>(image.height - 1) / (kGrid - 1);

  assetio::MeshAsset mesh;
  mesh.vertices.reserve(kGrid * kGrid);
  mesh.colors.reserve(kGrid * kGrid);
  for (int gy = 0; gy < kGrid; ++gy) {
    for (int gx = 0; gx < kGrid; ++gx) {
      const int px = static_cast<int>(std::lround(gx * step_x));
      const int py = static_cast<int>(std::lround(gy * step_y));
      const std::uint8_t* p = image.at(px, py);
      const double lum = (0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]) / 255.0;
      mesh.vertices.push_back({(gx / (kGrid - 1.0) - 0.5) * 0.8,
                               (gy / (kGrid - 1.0) - 0.5) * 0.8,
                               0.05 + 0.6 * lum});
      mesh.colors.push_back({p[0] / 255.0f, p[1] / 255.0f, p[2] / 255.0f});
    }
  }
  for (int gy = 0; gy + 1 < kGrid; ++gy) {
    for (int gx = 0; gx + 1 < kGrid; ++gx) {
      const std::uint32_t a = gy * kGrid + gx;
      const std::uint32_t b = a + 1;
      const std::uint32_t c = a + kGrid;
      const std::uint32_t d = c + 1;
      mesh.faces.push_back({a, b, d});
      mesh.faces.push_back({a, d, c});
    }
  }
  return assetio::write_obj(mesh);
}

std::string prompt_gen(const nlohmann::json& params) {
  promptgen::MockChatClient client;
  promptgen::ChatRequest request;
  request.system = params.value("system", "");
  request.user = params.value("user", "");
  request.max_items = params.value("max_items", 1);
  return client.complete(request).text;
}

}  // namespace mock

std::string MockDispatcher::dispatch(std::string_view request_envelope) {
  const StageRequest request = StageRequest::from_envelope(request_envelope);

  auto need_inputs = [&](std::size_t n) {
    if (request.inputs.size() != n) {
      throw StageError("mock " + std::string(to_string(request.stage)) +
                       ": expected " + std::to_string(n) + " inputs, got " +
                       std::to_string(request.inputs.size()));
    }
  };

  StageResponse response;
  switch (request.stage) {
    case StageKind::PromptGen:
      need_inputs(0);
      response.outputs.push_back(mock::prompt_gen(request.params));
      break;
    case StageKind::TextToImage:
      need_inputs(0);
      response.outputs.push_back(mock::text_to_image(request.params));
      break;
    case StageKind::DepthEstimate:
      need_inputs(1);
      response.outputs.push_back(mock::depth_estimate(request.inputs[0]));
      break;
    case StageKind::TextureAugment:
      need_inputs(2);
      response.outputs.push_back(mock::texture_augment(
          request.inputs[0], request.inputs[1], request.params));
      break;
    case StageKind::DragEdit:
      need_inputs(1);
      response.outputs.push_back(
          mock::drag_edit(request.inputs[0], request.params));
      break;
    case StageKind::ImageTo3D:
      need_inputs(1);
      response.outputs.push_back(
          mock::image_to_3d(request.inputs[0], request.params));
      break;
    default:
      throw StageError("mock dispatcher: stage " +
                       std::string(to_string(request.stage)) +
                       " is not a generative service");
  }

  {
    std::lock_guard lock(mutex_);
    ++counts_[request.stage];
  }
  return response.to_envelope();
}

std::uint64_t MockDispatcher::executions(StageKind stage) const {
  std::lock_guard lock(mutex_);
  const auto it = counts_.find(stage);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t MockDispatcher::total_executions() const {
  std::lock_guard lock(mutex_);
  std::uint64_t total = 0;
  for (const auto& [stage, count] : counts_) total += count;
  return total;
}

}  // namespace virtfusion::pipeline

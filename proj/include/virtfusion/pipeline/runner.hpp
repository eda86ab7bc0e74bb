// SPDX-License-Identifier: Apache-2.0
//
// Orchestration of the generation chain per class
//
//   PromptGen -> TextToImage -> DepthEstimate -> TextureAugment
//             -> DragEdit -> ImageTo3D -> pool ingest -> scene composition
//
// over pluggable stage endpoints with a content-addressed cache, full
// provenance recording, and dataset-directory emission. With all-mock
// endpoints and a fixed seed the output directory replays byte-identically.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "virtfusion/assetio/labelmap.hpp"
#include "virtfusion/assetio/manifest.hpp"
#include "virtfusion/composer.hpp"
#include "virtfusion/dragplan.hpp"
#include "virtfusion/objectpool.hpp"
#include "virtfusion/pipeline/cache.hpp"
#include "virtfusion/pipeline/image.hpp"
#include "virtfusion/pipeline/mocks.hpp"
#include "virtfusion/pipeline/stages.hpp"
#include "virtfusion/promptgen.hpp"

namespace virtfusion::pipeline {

struct PipelineCounts {
  int structures = 10;  // N: structural variants per class
  int textures = 8;     // M: texture variants per structure
  int drags = 5;        // P: drag variants per texture
};

struct PipelineConfig {
  std::vector<std::string> classes;
  PipelineCounts counts;
  std::uint64_t seed = 0;
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path out_dir = "dataset";
  std::size_t workers = 4;
  std::size_t sample_points = 30000;  // surface samples per ingested mesh
  std::size_t scene_count = 0;
  double pitch = 1.5;
  double jitter_lo = 0.9;
  double jitter_hi = 1.1;
  assetio::LabelMap labels = assetio::LabelMap::default_indoor20();
  composer::ComposerConfig composer;
  dragplan::DragConfig drag{40.0, 10.0, 1, 0};
  std::vector<std::string> qualifiers{"centered", "clean background",
                                      "no occlusion"};
  std::map<StageKind, ServiceEndpoint> endpoints;  // absent -> mock

  /// Parses the config JSON; relative paths (label_map, cache_dir, out_dir)
  /// resolve against base_dir. VIRTFUSION_CACHE overrides cache_dir.
  static PipelineConfig from_json(std::string_view bytes,
                                  const std::filesystem::path& base_dir);
};

PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// One recorded stage failure; `assets_lost` counts the leaf assets the
/// failed node would have fed (the count law: produced = N*M*P - sum lost).
struct StageFailure {
  std::string class_name;
  std::string stage;
  std::string detail;
  std::uint64_t assets_lost = 0;
};

struct ClassRunResult {
  std::vector<objectpool::ObjectAsset> assets;
  std::vector<StageFailure> failures;
};

struct FullRunResult {
  assetio::PoolManifest manifest;
  std::vector<objectpool::ObjectAsset> assets;
  composer::BatchResult batch;
  objectpool::CapacityReport capacity;
  std::vector<StageFailure> failures;
  std::filesystem::path dataset_dir;
};

class PipelineRunner {
public:
  explicit PipelineRunner(PipelineConfig config);

  /// Full per-class chain; assets come back in (structure, texture, drag)
  /// order with six-stage provenance.
  ClassRunResult run_class(const std::string& class_name);

  /// run_class over every configured class, then scene composition; writes
  /// out_dir/{pool,scenes,report.json}.
  FullRunResult run_full();

  /// Cache-through stage execution (exposed for loopback/soundness tests).
  Artifact execute(StageKind stage, const std::vector<std::string>& parents,
                   const nlohmann::json& params,
                   const std::vector<std::string>& inputs);

  const MockDispatcher& mock() const { return mock_; }
  CacheStore& cache() { return cache_; }
  const PipelineConfig& config() const { return config_; }

private:
  ServiceEndpoint endpoint_for(StageKind stage) const;

  PipelineConfig config_;
  CacheStore cache_;
  MockDispatcher mock_;
};

/// Foreground = luminance above `threshold`; empty masks fall out as errors
/// downstream in plan_drag.
dragplan::ObjectMask mask_from_image(const ImageRgb8& image,
                                     int threshold = 100);

}  // namespace virtfusion::pipeline

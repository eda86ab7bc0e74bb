// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/pipeline/runner.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>

#include "virtfusion/assetio/mesh_sampling.hpp"
#include "virtfusion/assetio/obj_io.hpp"
#include "virtfusion/assetio/scene_ply.hpp"
#include "virtfusion/errors.hpp"
#include "virtfusion/parallel.hpp"
#include "virtfusion/pipeline/transport.hpp"

namespace virtfusion::pipeline {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

namespace {

Transport transport_from_string(std::string_view name) {
  if (name == "mock") return Transport::Mock;
  if (name == "subprocess") return Transport::Subprocess;
  if (name == "http") return Transport::Http;
  throw ConfigError("unknown transport '" + std::string(name) + "'");
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

void write_text_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

PipelineConfig PipelineConfig::from_json(std::string_view bytes,
                                         const fs::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("pipeline config: ") + e.what());
  }

  PipelineConfig cfg;
  cfg.classes = doc.value("classes", std::vector<std::string>{});
  if (doc.contains("counts")) {
    const auto& counts = doc["counts"];
    cfg.counts.structures = counts.value("N", cfg.counts.structures);
    cfg.counts.textures = counts.value("M", cfg.counts.textures);
    cfg.counts.drags = counts.value("P", cfg.counts.drags);
  }
  cfg.seed = doc.value("seed", 0ull);
  cfg.workers = doc.value("workers", cfg.workers);
  cfg.sample_points = doc.value("sample_points", cfg.sample_points);
  cfg.scene_count = doc.value("scene_count", cfg.scene_count);

  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  if (doc.contains("cache_dir")) {
    cfg.cache_dir = resolve(doc["cache_dir"].get<std::string>());
  } else {
    cfg.cache_dir = base_dir / "cache";
  }
  if (const char* env = std::getenv("VIRTFUSION_CACHE")) {
    cfg.cache_dir = env;
  }
  cfg.out_dir = doc.contains("out_dir")
                    ? resolve(doc["out_dir"].get<std::string>())
                    : base_dir / "dataset";
  if (doc.contains("label_map")) {
    cfg.labels = assetio::LabelMap::from_json(
        read_text_file(resolve(doc["label_map"].get<std::string>())));
  }
  if (doc.contains("jitter")) {
    cfg.jitter_lo = doc["jitter"].at(0).get<double>();
    cfg.jitter_hi = doc["jitter"].at(1).get<double>();
  }
  if (doc.contains("composer")) {
    const auto& c = doc["composer"];
    cfg.composer.k = c.value("k", cfg.composer.k);
    cfg.composer.tau = c.value("tau", cfg.composer.tau);
    cfg.composer.margin = c.value("margin", cfg.composer.margin);
    cfg.composer.shift_step = c.value("shift_step", cfg.composer.shift_step);
    cfg.pitch = c.value("pitch", cfg.pitch);
    cfg.composer.max_shift = c.value("max_shift", 2.0 * cfg.pitch);
    cfg.composer.floor = c.value("floor", cfg.composer.floor);
    cfg.composer.floor_class = c.value("floor_class", cfg.composer.floor_class);
  } else {
    cfg.composer.max_shift = 2.0 * cfg.pitch;
  }
  cfg.composer.seed = cfg.seed;
  if (doc.contains("drag")) {
    const auto& d = doc["drag"];
    cfg.drag.mu = d.value("mu", cfg.drag.mu);
    cfg.drag.sigma = d.value("sigma", cfg.drag.sigma);
    cfg.drag.n_handles = d.value("n_handles", cfg.drag.n_handles);
  }
  if (doc.contains("qualifiers")) {
    cfg.qualifiers = doc["qualifiers"].get<std::vector<std::string>>();
  }
  if (doc.contains("endpoints")) {
    for (const auto& [stage_name, value] : doc["endpoints"].items()) {
      ServiceEndpoint ep;
      ep.stage = stage_from_string(stage_name);
      if (!is_generative(ep.stage)) {
        throw ConfigError("endpoint for non-generative stage '" + stage_name +
                          "'");
      }
      ep.transport = transport_from_string(value.value("transport", "mock"));
      ep.address = value.value("address", "");
      ep.timeout_s = value.value("timeout_s", ep.timeout_s);
      ep.retries = value.value("retries", ep.retries);
      ep.backoff_base_s = value.value("backoff_base_s", ep.backoff_base_s);
      cfg.endpoints[ep.stage] = ep;
    }
  }
  return cfg;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  return PipelineConfig::from_json(read_text_file(path),
                                   path.has_parent_path()
                                       ? path.parent_path()
                                       : fs::path("."));
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

PipelineRunner::PipelineRunner(PipelineConfig config)
    : config_(std::move(config)), cache_(config_.cache_dir) {}

ServiceEndpoint PipelineRunner::endpoint_for(StageKind stage) const {
  const auto it = config_.endpoints.find(stage);
  if (it != config_.endpoints.end()) return it->second;
  ServiceEndpoint ep;  // mock is always available
  ep.stage = stage;
  ep.transport = Transport::Mock;
  return ep;
}

Artifact PipelineRunner::execute(StageKind stage,
                                 const std::vector<std::string>& parents,
                                 const nlohmann::json& params,
                                 const std::vector<std::string>& inputs) {
  const std::string key = request_key(stage, parents, params);
  return cache_.get_or_compute(stage, key, [&]() {
    StageRequest request{stage, params, inputs};
    const std::string response_envelope =
        call_stage(endpoint_for(stage), request.to_envelope(), mock_,
                   cache_.root() / "tmp");
    StageResponse response = StageResponse::from_envelope(response_envelope);
    if (response.outputs.empty()) {
      throw StageError("stage " + std::string(to_string(stage)) +
                       " returned no outputs");
    }
    Artifact artifact;
    artifact.payload = std::move(response.outputs[0]);
    artifact.record.stage = stage;
    artifact.record.inputs = parents;
    artifact.record.params_hash = params_hash(params);
    artifact.record.id = artifact_id(stage, parents, params, artifact.payload);
    return artifact;
  });
}

dragplan::ObjectMask mask_from_image(const ImageRgb8& image, int threshold) {
  dragplan::ObjectMask mask;
  mask.width = image.width;
  mask.height = image.height;
  mask.bitmap.resize(static_cast<std::size_t>(image.width) * image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::uint8_t* p = image.at(x, y);
      const double lum = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
      mask.bitmap[static_cast<std::size_t>(y) * image.width + x] =
          lum > threshold ? 1 : 0;
    }
  }
  return mask;
}

namespace {

/// A chat client backed by the PromptGen endpoint. Each call embeds an
/// attempt counter so a retried question is a distinct cache entry.
class StageChatClient final : public promptgen::ChatClient {
public:
  StageChatClient(PipelineRunner& runner, std::string class_name,
                  std::string kind)
      : runner_(runner),
        class_name_(std::move(class_name)),
        kind_(std::move(kind)) {}

  promptgen::ChatResponse complete(const promptgen::ChatRequest& req) override {
    nlohmann::json params{{"system", req.system},
                          {"user", req.user},
                          {"max_items", req.max_items},
                          {"class", class_name_},
                          {"kind", kind_},
                          {"attempt", attempt_++}};
    Artifact artifact =
        runner_.execute(StageKind::PromptGen, {}, params, {});
    if (first_artifact_id_.empty()) {
      first_artifact_id_ = artifact.record.id;
      first_params_hash_ = artifact.record.params_hash;
    }
    return {artifact.payload};
  }

  std::string_view source_kind() const override { return "chat-client"; }
  const std::string& artifact_id() const { return first_artifact_id_; }
  const std::string& params_hash() const { return first_params_hash_; }

private:
  PipelineRunner& runner_;
  std::string class_name_;
  std::string kind_;
  int attempt_ = 0;
  std::string first_artifact_id_;
  std::string first_params_hash_;
};

struct Branch {
  bool alive = false;
  Artifact artifact;
  Artifact depth;
  std::vector<assetio::StageRecord> provenance;
};

assetio::StageRecord make_record(std::string stage, std::string prompt,
                                 std::string param_hash) {
  assetio::StageRecord record;
  record.stage = std::move(stage);
  record.prompt = std::move(prompt);
  record.param_hash = std::move(param_hash);
  return record;
}

}  // namespace

ClassRunResult PipelineRunner::run_class(const std::string& class_name) {
  const auto class_id = config_.labels.id_of(class_name);
  if (!class_id.has_value()) {
    throw ConfigError("run_class: class '" + class_name +
                      "' not in the label map");
  }
  const int n_struct = config_.counts.structures;
  const int n_tex = config_.counts.textures;
  const int n_drag = config_.counts.drags;
  const std::uint64_t leaves_per_struct =
      static_cast<std::uint64_t>(n_tex) * n_drag;

  ClassRunResult result;
  std::mutex failures_mutex;
  auto record_failure = [&](const std::string& stage,
                            const std::string& detail, std::uint64_t lost) {
    std::lock_guard lock(failures_mutex);
    result.failures.push_back({class_name, stage, detail, lost});
  };

  promptgen::CollectOptions collect_options;
  collect_options.quality_qualifiers = config_.qualifiers;

  // Structural and texture prompt sets (one PromptGen call each with mocks).
  StageChatClient structural_chat(*this, class_name, "structural");
  promptgen::PromptSet structural;
  try {
    structural = promptgen::collect_prompts(
        structural_chat, promptgen::PromptTemplate::default_structural(),
        class_name, n_struct, collect_options);
  } catch (const std::exception& e) {
    record_failure("PromptGen", e.what(),
                   static_cast<std::uint64_t>(n_struct) * leaves_per_struct);
    return result;
  }
  if (static_cast<int>(structural.prompts.size()) < n_struct) {
    record_failure(
        "PromptGen",
        "only " + std::to_string(structural.prompts.size()) + " of " +
            std::to_string(n_struct) + " structural prompts for '" +
            class_name + "'",
        (n_struct - structural.prompts.size()) * leaves_per_struct);
  }

  const int usable_structs =
      std::min<int>(n_struct, static_cast<int>(structural.prompts.size()));

  StageChatClient texture_chat(*this, class_name, "texture");
  promptgen::PromptSet textures;
  try {
    textures = promptgen::collect_prompts(
        texture_chat, promptgen::PromptTemplate::default_texture(), class_name,
        n_tex, collect_options);
  } catch (const std::exception& e) {
    record_failure("PromptGen", e.what(),
                   static_cast<std::uint64_t>(usable_structs) *
                       leaves_per_struct);
    return result;
  }
  const int usable_texs =
      std::min<int>(n_tex, static_cast<int>(textures.prompts.size()));
  if (usable_texs < n_tex) {
    record_failure("PromptGen",
                   "only " + std::to_string(usable_texs) + " of " +
                       std::to_string(n_tex) + " texture prompts for '" +
                       class_name + "'",
                   static_cast<std::uint64_t>(usable_structs) *
                       (n_tex - usable_texs) * n_drag);
  }

  auto size_table = objectpool::SizeTable::from_label_map(
      config_.labels, config_.jitter_lo, config_.jitter_hi);

  // Level 1+2: text-to-image, then its depth, per structural prompt.
  auto structs = parallel_map<Branch>(
      static_cast<std::size_t>(usable_structs), config_.workers,
      [&](std::size_t i) {
        Branch branch;
        const std::string& prompt = structural.prompts[i];
        try {
          Artifact image = execute(
              StageKind::TextToImage, {structural_chat.artifact_id()},
              {{"prompt", prompt}, {"seed", config_.seed}}, {});
          Artifact depth = execute(StageKind::DepthEstimate,
                                   {image.record.id}, nlohmann::json::object(),
                                   {image.payload});
          branch.provenance.push_back(make_record(
              "PromptGen",
              promptgen::render_question(
                  promptgen::PromptTemplate::default_structural(), class_name,
                  n_struct),
              structural_chat.params_hash()));
          branch.provenance.push_back(
              make_record("TextToImage", prompt, image.record.params_hash));
          branch.provenance.push_back(
              make_record("DepthEstimate", "", depth.record.params_hash));
          // Depth artifact rides along with the image for the next level.
          branch.artifact = std::move(image);
          branch.depth = std::move(depth);
          branch.alive = true;
        } catch (const std::exception& e) {
          record_failure("TextToImage", e.what(), leaves_per_struct);
        }
        return branch;
      });

  // Level 3: texture augmentation per (structure, texture).
  struct TexturedBranch {
    bool alive = false;
    Artifact artifact;
    std::vector<assetio::StageRecord> provenance;
  };
  const std::size_t tex_total =
      static_cast<std::size_t>(usable_structs) * usable_texs;
  auto textured = parallel_map<TexturedBranch>(
      tex_total, config_.workers, [&](std::size_t flat) {
        const std::size_t i = flat / usable_texs;
        const std::size_t j = flat % usable_texs;
        TexturedBranch branch;
        if (!structs[i].alive) return branch;
        const std::string& texture_prompt = textures.prompts[j];
        try {
          Artifact textured_img = execute(
              StageKind::TextureAugment,
              {structs[i].artifact.record.id, structs[i].depth.record.id},
              {{"prompt", texture_prompt}},
              {structs[i].artifact.payload, structs[i].depth.payload});
          branch.provenance = structs[i].provenance;
          branch.provenance.push_back(make_record(
              "TextureAugment", texture_prompt,
              textured_img.record.params_hash));
          branch.artifact = std::move(textured_img);
          branch.alive = true;
        } catch (const std::exception& e) {
          record_failure("TextureAugment", e.what(), n_drag);
        }
        return branch;
      });

  // Levels 4-6: drag plan + edit, image-to-3D, ingest, per leaf.
  struct Leaf {
    bool alive = false;
    objectpool::ObjectAsset asset;
  };
  const std::size_t leaf_total = tex_total * n_drag;
  auto leaves = parallel_map<Leaf>(
      leaf_total, config_.workers, [&](std::size_t flat) {
        const std::size_t tex_index = flat / n_drag;
        const std::size_t p = flat % n_drag;
        Leaf leaf;
        if (!textured[tex_index].alive) return leaf;
        const Artifact& source = textured[tex_index].artifact;
        try {
          // Plan on the textured image's foreground.
          const ImageRgb8 image = decode_png_rgb8(source.payload);
          dragplan::ObjectMask mask = mask_from_image(image);
          Rng plan_rng(derive_seed(
              mix64(config_.seed ^ hash_seed(source.record.id)), p));
          dragplan::DragPlan plan =
              dragplan::plan_drag(mask, config_.drag, plan_rng);
          plan.image_ref = source.record.id;

          Artifact dragged = execute(
              StageKind::DragEdit, {source.record.id},
              {{"plan", dragplan::serialize_plan(plan)},
               {"variant", p}},
              {source.payload});
          Artifact mesh_artifact = execute(
              StageKind::ImageTo3D, {dragged.record.id},
              {{"remove_background", true}}, {dragged.payload});

          // In-process ingest: mesh -> surface samples -> labeled, sized.
          const assetio::MeshAsset mesh =
              assetio::parse_obj(mesh_artifact.payload);
          Rng sample_rng(derive_seed(
              mix64(config_.seed ^ hash_seed(mesh_artifact.record.id)), 1));
          auto cloud =
              assetio::sample_mesh(mesh, config_.sample_points, sample_rng);
          auto asset =
              objectpool::assign_class(std::move(cloud), *class_id,
                                       config_.labels);
          Rng size_rng(derive_seed(
              mix64(config_.seed ^ hash_seed(mesh_artifact.record.id)), 2));
          asset = objectpool::normalize_size(asset, size_table, size_rng);

          asset.asset_id =
              class_name + "-" + mesh_artifact.record.id.substr(0, 16);
          asset.provenance = textured[tex_index].provenance;
          asset.provenance.push_back(
              make_record("DragEdit", "", dragged.record.params_hash));
          asset.provenance.push_back(
              make_record("ImageTo3D", "", mesh_artifact.record.params_hash));
          leaf.asset = std::move(asset);
          leaf.alive = true;
        } catch (const std::exception& e) {
          record_failure("DragEdit/ImageTo3D/ingest", e.what(), 1);
        }
        return leaf;
      });

  for (auto& leaf : leaves) {
    if (leaf.alive) result.assets.push_back(std::move(leaf.asset));
  }
  return result;
}

FullRunResult PipelineRunner::run_full() {
  FullRunResult result;
  result.dataset_dir = config_.out_dir;

  const fs::path pool_dir = config_.out_dir / "pool";
  const fs::path scenes_dir = config_.out_dir / "scenes";
  fs::create_directories(pool_dir);
  fs::create_directories(scenes_dir);

  for (const auto& class_name : config_.classes) {
    ClassRunResult class_result = run_class(class_name);
    for (auto& failure : class_result.failures) {
      result.failures.push_back(std::move(failure));
    }
    for (auto& asset : class_result.assets) {
      assetio::ManifestEntry entry;
      entry.id = asset.asset_id;
      entry.path = asset.asset_id + ".ply";
      entry.class_id = asset.class_id;
      entry.class_name = class_name;
      entry.provenance = asset.provenance;
      result.manifest.entries.push_back(std::move(entry));

      assetio::SceneFile asset_file;
      asset_file.cloud = asset.cloud;
      asset_file.meta.scene_id = asset.asset_id;
      asset_file.meta.template_id = "asset";
      asset_file.meta.seed = config_.seed;
      asset_file.meta.instance_classes[0] = asset.class_id;
      write_text_file(pool_dir / (asset.asset_id + ".ply"),
                      assetio::write_scene_ply(asset_file));
      result.assets.push_back(std::move(asset));
    }
  }
  write_text_file(pool_dir / "manifest.json",
                  assetio::write_manifest(result.manifest));

  result.capacity = objectpool::capacity(
      config_.classes.size(), config_.counts.structures,
      config_.counts.textures, config_.counts.drags);

  if (config_.scene_count > 0 && !result.assets.empty()) {
    const auto tmpl = composer::SceneTemplate::grid3x3(config_.pitch);
    composer::ComposerConfig compose_cfg = config_.composer;
    compose_cfg.seed = config_.seed;
    result.batch = composer::generate_batch(result.assets, tmpl, compose_cfg,
                                            config_.scene_count,
                                            config_.workers);
    for (const auto& scene : result.batch.scenes) {
      write_text_file(scenes_dir / (scene.meta.scene_id + ".ply"),
                      assetio::write_scene_ply(scene));
    }
    write_text_file(scenes_dir / "batch_summary.json",
                    composer::batch_summary_json(result.batch, compose_cfg));
  }

  // Dataset report: capacity, class distribution, failures, skips.
  nlohmann::ordered_json report;
  report["capacity"] = {{"C", result.capacity.classes},
                        {"N", result.capacity.structures},
                        {"M", result.capacity.textures},
                        {"P", result.capacity.drag_variants},
                        {"total", result.capacity.total}};
  report["pool_assets"] = result.manifest.entries.size();
  const auto stats = objectpool::class_stats(result.batch.scenes);
  report["class_stats"] = nlohmann::ordered_json::parse(
      objectpool::class_stats_json(stats, &config_.labels));
  report["failures"] = nlohmann::ordered_json::array();
  for (const auto& failure : result.failures) {
    report["failures"].push_back({{"class", failure.class_name},
                                  {"stage", failure.stage},
                                  {"detail", failure.detail},
                                  {"assets_lost", failure.assets_lost}});
  }
  std::uint64_t skip_count = 0;
  for (const auto& summary : result.batch.summaries) {
    skip_count += summary.skips.size();
  }
  report["scene_skips"] = skip_count;
  write_text_file(config_.out_dir / "report.json", report.dump(2) + "\n");

  return result;
}

}  // namespace virtfusion::pipeline

// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <thread>

#include <httplib.h>

#include "support.hpp"
#include "virtfusion/errors.hpp"
#include "virtfusion/pipeline/cache.hpp"
#include "virtfusion/pipeline/image.hpp"
#include "virtfusion/pipeline/mocks.hpp"
#include "virtfusion/pipeline/runner.hpp"
#include "virtfusion/pipeline/stages.hpp"
#include "virtfusion/pipeline/transport.hpp"

using namespace virtfusion;
using namespace virtfusion::pipeline;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       ("vf_test_" + tag + "_" + std::to_string(getpid()) +
                        "_" + std::to_string(counter.fetch_add(1)));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> tree;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    tree[fs::relative(entry.path(), root).string()] =
        std::string((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  }
  return tree;
}

PipelineConfig small_config(const fs::path& dir, int n, int m, int p,
                            std::vector<std::string> classes) {
  PipelineConfig cfg;
  cfg.classes = std::move(classes);
  cfg.counts = {n, m, p};
  cfg.seed = 99;
  cfg.cache_dir = dir / "cache";
  cfg.out_dir = dir / "dataset";
  cfg.workers = 4;
  cfg.sample_points = 3000;
  return cfg;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hashing, base64, envelopes
// ---------------------------------------------------------------------------

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("base64 round trips including binary and padding lengths") {
  CHECK(base64_encode("") == "");
  CHECK(base64_encode("f") == "Zg==");
  CHECK(base64_encode("fo") == "Zm8=");
  CHECK(base64_encode("foo") == "Zm9v");
  CHECK(base64_decode("Zm9vYg==") == "foob");

  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::string blob;
    const std::size_t len = rng.uniform_index(300);
    for (std::size_t i = 0; i < len; ++i) {
      blob.push_back(static_cast<char>(rng.uniform_index(256)));
    }
    CHECK(base64_decode(base64_encode(blob)) == blob);
  }

  CHECK_THROWS_AS(base64_decode("abc"), ParseError);
  CHECK_THROWS_AS(base64_decode("a=bc"), ParseError);
  CHECK_THROWS_AS(base64_decode("ab!c"), ParseError);
}

TEST_CASE("stage envelopes carry params and binary inputs") {
  StageRequest request;
  request.stage = StageKind::TextureAugment;
  request.params = {{"prompt", "mossy stone"}};
  request.inputs = {std::string("\x00\x01\xff", 3), "plain"};

  const std::string envelope = request.to_envelope();
  CHECK(envelope.find("\"stage\":\"TextureAugment\"") != std::string::npos);
  CHECK(envelope.find("\"inputs\":[") != std::string::npos);

  const StageRequest back = StageRequest::from_envelope(envelope);
  CHECK(back.stage == request.stage);
  CHECK(back.params == request.params);
  CHECK(back.inputs == request.inputs);

  StageResponse response;
  response.outputs = {"payload-a", std::string("\x7f\x00", 2)};
  const StageResponse rback =
      StageResponse::from_envelope(response.to_envelope());
  CHECK(rback.outputs == response.outputs);

  CHECK_THROWS_AS(StageRequest::from_envelope("{}"), ParseError);
  CHECK_THROWS_AS(StageResponse::from_envelope("{\"outputs\":3}"), ParseError);
  CHECK_THROWS_AS(stage_from_string("Nonsense"), ParseError);
}

TEST_CASE("params hash is canonical under key order") {
  nlohmann::json a{{"zeta", 1}, {"alpha", 2}};
  nlohmann::json b{{"alpha", 2}, {"zeta", 1}};
  CHECK(params_hash(a) == params_hash(b));
  CHECK(params_hash(a) != params_hash(nlohmann::json{{"alpha", 3}}));
}

// ---------------------------------------------------------------------------
// PNG payloads
// ---------------------------------------------------------------------------

TEST_CASE("rgb8 png round-trips") {
  Rng rng(9);
  ImageRgb8 image;
  image.width = 37;
  image.height = 23;
  image.pixels.resize(37 * 23 * 3);
  for (auto& b : image.pixels) {
    b = static_cast<std::uint8_t>(rng.uniform_index(256));
  }
  const auto png = encode_png(image);
  CHECK(decode_png_rgb8(png) == image);
  CHECK_THROWS_AS(decode_png_gray16(png), ParseError);
  CHECK_THROWS_AS(decode_png_rgb8("not a png"), ParseError);
}

TEST_CASE("gray16 png round-trips with full dynamic range") {
  ImageGray16 depth;
  depth.width = 64;
  depth.height = 8;
  depth.pixels.resize(64 * 8);
  for (std::size_t i = 0; i < depth.pixels.size(); ++i) {
    depth.pixels[i] = static_cast<std::uint16_t>((i * 131) % 65536);
  }
  const auto png = encode_png(depth);
  CHECK(decode_png_gray16(png) == depth);
  CHECK_THROWS_AS(decode_png_rgb8(png), ParseError);
}

// ---------------------------------------------------------------------------
// Mocks
// ---------------------------------------------------------------------------

TEST_CASE("mock text-to-image is deterministic 64x64 rgb") {
  const nlohmann::json params{{"prompt", "a red chair"}, {"seed", 7}};
  const auto a = mock::text_to_image(params);
  const auto b = mock::text_to_image(params);
  CHECK(a == b);
  const auto image = decode_png_rgb8(a);
  CHECK(image.width == 64);
  CHECK(image.height == 64);

  const auto c = mock::text_to_image({{"prompt", "a blue sofa"}, {"seed", 7}});
  CHECK(c != a);
}

TEST_CASE("mock depth estimate matches input size, 16-bit, deterministic") {
  const auto img = mock::text_to_image({{"prompt", "x"}, {"seed", 1}});
  const auto d1 = mock::depth_estimate(img);
  const auto d2 = mock::depth_estimate(img);
  CHECK(d1 == d2);
  const auto depth = decode_png_gray16(d1);
  CHECK(depth.width == 64);
  CHECK(depth.height == 64);
  // Radial gradient: center is the nearest (largest) value.
  const auto center = depth.pixels[32 * 64 + 32];
  CHECK(center > depth.pixels[0]);
}

TEST_CASE("mock texture augment recolors but keeps dimensions") {
  const auto img = mock::text_to_image({{"prompt", "x"}, {"seed", 1}});
  const auto depth = mock::depth_estimate(img);
  const auto oak =
      mock::texture_augment(img, depth, {{"prompt", "oak veneer"}});
  const auto steel =
      mock::texture_augment(img, depth, {{"prompt", "brushed steel"}});
  CHECK(oak != steel);
  CHECK(decode_png_rgb8(oak).width == 64);
  CHECK(mock::texture_augment(img, depth, {{"prompt", "oak veneer"}}) == oak);
}

TEST_CASE("mock drag edit displaces pixels per plan") {
  const auto img = mock::text_to_image({{"prompt", "y"}, {"seed", 2}});
  dragplan::DragPlan plan;
  plan.image_ref = "t";
  plan.instructions.push_back({20, 20, 40, 28});
  const auto edited =
      mock::drag_edit(img, {{"plan", dragplan::serialize_plan(plan)}});
  CHECK(edited != img);
  CHECK(decode_png_rgb8(edited).width == 64);
  CHECK(mock::drag_edit(img, {{"plan", dragplan::serialize_plan(plan)}}) ==
        edited);
  CHECK_THROWS_AS(mock::drag_edit(img, nlohmann::json::object()), StageError);
}

TEST_CASE("mock image-to-3d yields a sampleable colored height field") {
  const auto img = mock::text_to_image({{"prompt", "z"}, {"seed", 3}});
  const auto obj = mock::image_to_3d(img, {{"remove_background", true}});
  const auto mesh = assetio::parse_obj(obj);
  CHECK(mesh.vertices.size() == 32 * 32);
  CHECK(mesh.faces.size() == 2 * 31 * 31);
  CHECK(mesh.has_colors());

  Rng rng(1);
  auto cloud = assetio::sample_mesh(mesh, 5000, rng);
  CHECK(cloud.size() == 5000);
}

TEST_CASE("mock dispatcher counts executions and validates stages") {
  MockDispatcher dispatcher;
  StageRequest request;
  request.stage = StageKind::TextToImage;
  request.params = {{"prompt", "q"}, {"seed", 0}};
  const auto response_envelope = dispatcher.dispatch(request.to_envelope());
  const auto response = StageResponse::from_envelope(response_envelope);
  CHECK(response.outputs.size() == 1);
  CHECK(dispatcher.executions(StageKind::TextToImage) == 1);
  CHECK(dispatcher.total_executions() == 1);

  StageRequest bad;
  bad.stage = StageKind::PoolIngest;
  CHECK_THROWS_AS(dispatcher.dispatch(bad.to_envelope()), StageError);
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

TEST_CASE("cache stores, reloads, and rejects corrupted payloads") {
  const auto dir = fresh_dir("cache");
  CacheStore cache(dir);

  const nlohmann::json params{{"p", 1}};
  const std::string key = request_key(StageKind::TextToImage, {"parent"},
                                      params);
  Artifact artifact;
  artifact.payload = "payload-bytes";
  artifact.record.stage = StageKind::TextToImage;
  artifact.record.inputs = {"parent"};
  artifact.record.params_hash = params_hash(params);
  artifact.record.id = artifact_id(StageKind::TextToImage, {"parent"}, params,
                                   artifact.payload);
  cache.put(StageKind::TextToImage, key, artifact);

  auto hit = cache.get(StageKind::TextToImage, key);
  REQUIRE(hit.has_value());
  CHECK(hit->payload == "payload-bytes");
  CHECK(hit->record.id == artifact.record.id);

  // Corrupt the payload on disk: the full-id check must fail the hit.
  {
    std::ofstream out(dir / "TextToImage" / key,
                      std::ios::binary | std::ios::trunc);
    out << "tampered";
  }
  CHECK_FALSE(cache.get(StageKind::TextToImage, key).has_value());
}

TEST_CASE("single-flight: concurrent identical requests compute once") {
  const auto dir = fresh_dir("flight");
  CacheStore cache(dir);
  std::atomic<int> executions{0};

  auto compute = [&]() {
    executions.fetch_add(1);
    std::this_thread::sleep_for(std::chrono::milliseconds(30));
    Artifact artifact;
    artifact.payload = "x";
    artifact.record.stage = StageKind::DragEdit;
    artifact.record.params_hash = params_hash(nlohmann::json::object());
    artifact.record.id = artifact_id(StageKind::DragEdit, {},
                                     nlohmann::json::object(), "x");
    return artifact;
  };

  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&]() {
      auto artifact = cache.get_or_compute(StageKind::DragEdit, "same-key",
                                           compute);
      CHECK(artifact.payload == "x");
    });
  }
  for (auto& t : threads) t.join();
  CHECK(executions.load() == 1);
}

// ---------------------------------------------------------------------------
// Transports
// ---------------------------------------------------------------------------

TEST_CASE("mock transport answers through call_stage") {
  MockDispatcher dispatcher;
  ServiceEndpoint endpoint;
  endpoint.stage = StageKind::TextToImage;
  endpoint.transport = Transport::Mock;

  StageRequest request;
  request.stage = StageKind::TextToImage;
  request.params = {{"prompt", "hello"}, {"seed", 0}};
  const auto response = call_stage(endpoint, request.to_envelope(), dispatcher);
  CHECK(StageResponse::from_envelope(response).outputs.size() == 1);
}

TEST_CASE("subprocess transport substitutes {in}/{out} and honors exit codes") {
  const auto dir = fresh_dir("subproc");
  MockDispatcher dispatcher;

  // Canned response the child copies to {out}.
  StageResponse canned;
  canned.outputs = {"subprocess-made-this"};
  {
    std::ofstream out(dir / "canned.json", std::ios::binary);
    out << canned.to_envelope();
  }

  ServiceEndpoint ok;
  ok.stage = StageKind::DragEdit;
  ok.transport = Transport::Subprocess;
  ok.address = "cp " + (dir / "canned.json").string() + " {out} && test -f {in}";
  ok.timeout_s = 10.0;
  ok.retries = 0;

  StageRequest request;
  request.stage = StageKind::DragEdit;
  request.params = {{"plan", "{}"}};
  const auto response =
      call_stage(ok, request.to_envelope(), dispatcher, dir / "tmp");
  CHECK(StageResponse::from_envelope(response).outputs ==
        canned.outputs);

  // Nonzero exit fails after retries+1 attempts.
  ServiceEndpoint bad = ok;
  bad.address = "exit 1";
  bad.retries = 2;
  bad.backoff_base_s = 0.001;
  CHECK_THROWS_WITH_AS(
      call_stage(bad, request.to_envelope(), dispatcher, dir / "tmp"),
      doctest::Contains("3 attempts"), StageError);

  // Timeout kills the child.
  ServiceEndpoint slow = ok;
  slow.address = "sleep 30";
  slow.timeout_s = 0.2;
  slow.retries = 0;
  slow.backoff_base_s = 0.001;
  CHECK_THROWS_AS(
      call_stage(slow, request.to_envelope(), dispatcher, dir / "tmp"),
      StageError);
}

TEST_CASE("http transport round-trips the envelope against a loopback server") {
  httplib::Server server;
  server.Post("/stage", [](const httplib::Request& req,
                           httplib::Response& res) {
    // Echo: inputs become outputs.
    const StageRequest request = StageRequest::from_envelope(req.body);
    StageResponse response;
    response.outputs = request.inputs;
    res.set_content(response.to_envelope(), "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread server_thread([&]() { server.listen_after_bind(); });
  server.wait_until_ready();

  ServiceEndpoint endpoint;
  endpoint.stage = StageKind::TextureAugment;
  endpoint.transport = Transport::Http;
  endpoint.address = "http://127.0.0.1:" + std::to_string(port) + "/stage";
  endpoint.retries = 0;

  MockDispatcher dispatcher;
  StageRequest request;
  request.stage = StageKind::TextureAugment;
  request.params = {{"prompt", "x"}};
  request.inputs = {"first payload", std::string("\x00\x01", 2)};
  const auto response_envelope =
      call_stage(endpoint, request.to_envelope(), dispatcher);
  CHECK(StageResponse::from_envelope(response_envelope).outputs ==
        request.inputs);

  server.stop();
  server_thread.join();

  // Dead server: retried, then StageError.
  ServiceEndpoint dead = endpoint;
  dead.retries = 1;
  dead.backoff_base_s = 0.001;
  dead.timeout_s = 0.3;
  CHECK_THROWS_AS(call_stage(dead, request.to_envelope(), dispatcher),
                  StageError);
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

TEST_CASE("run_class yields N*M*P assets with six-stage provenance") {
  const auto dir = fresh_dir("runclass");
  PipelineRunner runner(small_config(dir, 2, 2, 2, {"chair"}));
  auto result = runner.run_class("chair");

  CHECK(result.failures.empty());
  REQUIRE(result.assets.size() == 8);

  const std::vector<std::string> expected_chain{
      "PromptGen",      "TextToImage", "DepthEstimate",
      "TextureAugment", "DragEdit",    "ImageTo3D"};
  std::set<std::string> ids;
  for (const auto& asset : result.assets) {
    CHECK(asset.class_id == 5);
    CHECK(asset.cloud.size() == 3000);
    ids.insert(asset.asset_id);
    REQUIRE(asset.provenance.size() == 6);
    for (std::size_t s = 0; s < 6; ++s) {
      CHECK(asset.provenance[s].stage == expected_chain[s]);
      CHECK_FALSE(asset.provenance[s].param_hash.empty());
    }
    // Walk-back: the chain starts at PromptGen and follows stage order.
    CHECK(asset.provenance.front().stage == "PromptGen");
  }
  CHECK(ids.size() == 8);  // unique asset ids

  CHECK_THROWS_AS(runner.run_class("unmapped"), ConfigError);
}

TEST_CASE("rerunning a class is pure cache: zero new stage executions") {
  const auto dir = fresh_dir("cachelaw");
  PipelineRunner runner(small_config(dir, 2, 2, 1, {"table"}));

  auto first = runner.run_class("table");
  REQUIRE(first.assets.size() == 4);
  const auto executions_after_first = runner.mock().total_executions();
  CHECK(executions_after_first > 0);

  auto second = runner.run_class("table");
  CHECK(runner.mock().total_executions() == executions_after_first);
  REQUIRE(second.assets.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(second.assets[i].asset_id == first.assets[i].asset_id);
    CHECK(second.assets[i].cloud == first.assets[i].cloud);
  }

  // A fresh runner over the same cache directory also starts warm.
  PipelineRunner revived(small_config(dir, 2, 2, 1, {"table"}));
  auto third = revived.run_class("table");
  CHECK(revived.mock().total_executions() == 0);
  CHECK(third.assets.size() == 4);
}

TEST_CASE("run_full emits pool, scenes, and report with the capacity law") {
  const auto dir = fresh_dir("runfull");
  auto cfg = small_config(dir, 1, 1, 1, {"chair", "table"});
  cfg.scene_count = 3;
  PipelineRunner runner(cfg);
  auto result = runner.run_full();

  CHECK(result.manifest.entries.size() == 2);
  CHECK(result.capacity.total == 2);
  CHECK(result.batch.scenes.size() == 3);
  CHECK(result.failures.empty());

  CHECK(fs::exists(dir / "dataset" / "pool" / "manifest.json"));
  CHECK(fs::exists(dir / "dataset" / "scenes" / "scene_00000.ply"));
  CHECK(fs::exists(dir / "dataset" / "scenes" / "scene_00002.ply"));
  CHECK(fs::exists(dir / "dataset" / "scenes" / "batch_summary.json"));
  CHECK(fs::exists(dir / "dataset" / "report.json"));

  // Manifest parses and asset files load as valid labeled clouds.
  std::ifstream manifest_in(dir / "dataset" / "pool" / "manifest.json",
                            std::ios::binary);
  std::string manifest_bytes(
      (std::istreambuf_iterator<char>(manifest_in)),
      std::istreambuf_iterator<char>());
  const auto labels = cfg.labels;
  auto manifest = assetio::read_manifest(manifest_bytes, &labels);
  REQUIRE(manifest.entries.size() == 2);
  for (const auto& entry : manifest.entries) {
    std::ifstream asset_in(dir / "dataset" / "pool" / entry.path,
                           std::ios::binary);
    std::string asset_bytes((std::istreambuf_iterator<char>(asset_in)),
                            std::istreambuf_iterator<char>());
    auto scene = assetio::read_scene_ply(asset_bytes);
    CHECK(scene.cloud.size() == cfg.sample_points);
    for (auto s : scene.cloud.sem) CHECK(s == entry.class_id);
  }

  // report.json carries capacity C*N*M*P.
  std::ifstream report_in(dir / "dataset" / "report.json");
  const auto report = nlohmann::json::parse(report_in);
  CHECK(report["capacity"]["total"] == 2);
  CHECK(report["pool_assets"] == 2);
}

TEST_CASE("run_full replays byte-identically under a fixed seed") {
  const auto dir_a = fresh_dir("det_a");
  const auto dir_b = fresh_dir("det_b");
  auto cfg_a = small_config(dir_a, 2, 1, 1, {"chair"});
  cfg_a.scene_count = 2;
  auto cfg_b = small_config(dir_b, 2, 1, 1, {"chair"});
  cfg_b.scene_count = 2;

  PipelineRunner runner_a(cfg_a);
  runner_a.run_full();
  PipelineRunner runner_b(cfg_b);
  runner_b.run_full();

  const auto tree_a = read_tree(dir_a / "dataset");
  const auto tree_b = read_tree(dir_b / "dataset");
  REQUIRE(tree_a.size() == tree_b.size());
  for (const auto& [path, bytes] : tree_a) {
    REQUIRE(tree_b.count(path) == 1);
    CHECK(bytes == tree_b.at(path));
  }
}

TEST_CASE("endpoint failures are recorded, the rest of the class survives") {
  const auto dir = fresh_dir("fail");
  auto cfg = small_config(dir, 2, 1, 1, {"sofa"});
  ServiceEndpoint broken;
  broken.stage = StageKind::DragEdit;
  broken.transport = Transport::Subprocess;
  broken.address = "exit 3";
  broken.retries = 0;
  broken.backoff_base_s = 0.001;
  cfg.endpoints[StageKind::DragEdit] = broken;

  PipelineRunner runner(cfg);
  auto result = runner.run_class("sofa");
  CHECK(result.assets.empty());
  REQUIRE(result.failures.size() == 2);  // one per leaf
  std::uint64_t lost = 0;
  for (const auto& failure : result.failures) lost += failure.assets_lost;
  CHECK(lost == 2);  // count law: produced 0 = N*M*P(2) - lost(2)
  CHECK(result.failures[0].detail.find("DragEdit") != std::string::npos);
}

TEST_CASE("pipeline config parses endpoints, counts, and paths") {
  const auto dir = fresh_dir("cfg");
  const std::string json = R"({
    "classes": ["chair"],
    "counts": {"N": 3, "M": 2, "P": 1},
    "seed": 123,
    "workers": 2,
    "sample_points": 1234,
    "scene_count": 5,
    "composer": {"k": 9, "tau": 50000, "pitch": 2.0},
    "drag": {"mu": 30, "sigma": 5, "n_handles": 2},
    "endpoints": {
      "TextToImage": {"transport": "mock"},
      "DragEdit": {"transport": "subprocess", "address": "run.sh {in} {out}",
                    "timeout_s": 7.5, "retries": 4}
    }
  })";
  auto cfg = PipelineConfig::from_json(json, dir);
  CHECK(cfg.counts.structures == 3);
  CHECK(cfg.counts.textures == 2);
  CHECK(cfg.counts.drags == 1);
  CHECK(cfg.seed == 123);
  CHECK(cfg.composer.tau == 50000);
  CHECK(cfg.pitch == 2.0);
  CHECK(cfg.composer.max_shift == 4.0);  // 2 * pitch
  CHECK(cfg.drag.n_handles == 2);
  CHECK(cfg.endpoints.at(StageKind::DragEdit).timeout_s == 7.5);
  CHECK(cfg.endpoints.at(StageKind::DragEdit).retries == 4);
  CHECK(cfg.cache_dir == dir / "cache");

  CHECK_THROWS_AS(PipelineConfig::from_json("{bad", dir), ParseError);
  CHECK_THROWS_AS(PipelineConfig::from_json(
                      R"({"endpoints": {"PoolIngest": {}}})", dir),
                  ConfigError);

  // VIRTFUSION_CACHE wins over the config value.
  setenv("VIRTFUSION_CACHE", "/tmp/vf_cache_env", 1);
  auto cfg2 = PipelineConfig::from_json(R"({"cache_dir": "elsewhere"})", dir);
  CHECK(cfg2.cache_dir == fs::path("/tmp/vf_cache_env"));
  unsetenv("VIRTFUSION_CACHE");
}

TEST_CASE("mask_from_image thresholds luminance") {
  ImageRgb8 image;
  image.width = 2;
  image.height = 1;
  image.pixels = {255, 255, 255, 0, 0, 0};
  const auto mask = mask_from_image(image, 100);
  CHECK(mask.foreground(0, 0));
  CHECK_FALSE(mask.foreground(1, 0));
}

// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/assetio/scene_ply.hpp"

#include <charconv>
#include <cstring>
#include <vector>

#include <json.hpp>

#include "virtfusion/errors.hpp"

namespace virtfusion::assetio {

namespace {

constexpr std::size_t kRecordBytes = 3 * 4 + 3 * 1 + 2 * 2;  // 19

// Property list the reader insists on, in order.
constexpr const char* kProperties[] = {
    "property float x",
    "property float y",
    "property float z",
    "property uchar red",
    "property uchar green",
    "property uchar blue",
    "property ushort semantic_label",
    "property ushort instance_label",
};

void put_f32_le(std::string& out, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  out.push_back(static_cast<char>(bits & 0xff));
  out.push_back(static_cast<char>((bits >> 8) & 0xff));
  out.push_back(static_cast<char>((bits >> 16) & 0xff));
  out.push_back(static_cast<char>((bits >> 24) & 0xff));
}

void put_u16_le(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

float get_f32_le(const unsigned char* p) {
  const std::uint32_t bits = static_cast<std::uint32_t>(p[0]) |
                             (static_cast<std::uint32_t>(p[1]) << 8) |
                             (static_cast<std::uint32_t>(p[2]) << 16) |
                             (static_cast<std::uint32_t>(p[3]) << 24);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

std::uint16_t get_u16_le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string encode_instance_classes(
    const std::map<std::uint32_t, std::uint32_t>& m) {
  std::string out;
  for (const auto& [ins, cls] : m) {
    if (!out.empty()) out += ',';
    out += std::to_string(ins);
    out += ':';
    out += std::to_string(cls);
  }
  return out;
}

std::map<std::uint32_t, std::uint32_t> decode_instance_classes(
    std::string_view s) {
  std::map<std::uint32_t, std::uint32_t> m;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find(',', pos);
    if (end == std::string_view::npos) end = s.size();
    const std::string_view pair = s.substr(pos, end - pos);
    const std::size_t colon = pair.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("ply: bad instance_classes entry '" +
                       std::string(pair) + "'");
    }
    std::uint32_t ins = 0, cls = 0;
    const auto a = std::from_chars(pair.data(), pair.data() + colon, ins);
    const auto b = std::from_chars(pair.data() + colon + 1,
                                   pair.data() + pair.size(), cls);
    if (a.ec != std::errc{} || a.ptr != pair.data() + colon ||
        b.ec != std::errc{} || b.ptr != pair.data() + pair.size()) {
      throw ParseError("ply: bad instance_classes entry '" +
                       std::string(pair) + "'");
    }
    m[ins] = cls;
    pos = end + 1;
  }
  return m;
}

}  // namespace

void check_scene(const SceneFile& scene) {
  scene.cloud.check();
  const auto& map = scene.meta.instance_classes;
  for (std::size_t i = 0; i < scene.cloud.size(); ++i) {
    const std::uint32_t ins = scene.cloud.ins[i];
    const std::uint32_t sem = scene.cloud.sem[i];
    const auto it = map.find(ins);
    if (ins != 0) {
      if (it == map.end()) {
        throw ValidationError("scene: instance " + std::to_string(ins) +
                              " missing from instance-class map");
      }
      if (sem != it->second) {
        throw ValidationError(
            "scene: point " + std::to_string(i) + " has sem " +
            std::to_string(sem) + " but instance " + std::to_string(ins) +
            " maps to class " + std::to_string(it->second));
      }
    } else {
      const std::uint32_t expected = it == map.end() ? 0 : it->second;
      if (sem != expected) {
        throw ValidationError("scene: unassigned point " + std::to_string(i) +
                              " has sem " + std::to_string(sem) +
                              ", expected background class " +
                              std::to_string(expected));
      }
    }
  }
}

std::string write_scene_ply(const SceneFile& scene) {
  check_scene(scene);
  for (std::size_t i = 0; i < scene.cloud.size(); ++i) {
    if (scene.cloud.sem[i] > 0xffff || scene.cloud.ins[i] > 0xffff) {
      throw RangeError("ply: label value exceeds 65535 at point " +
                       std::to_string(i));
    }
  }
  for (const auto& [ins, cls] : scene.meta.instance_classes) {
    if (ins > 0xffff || cls > 0xffff) {
      throw RangeError("ply: instance-class map entry exceeds 65535");
    }
  }

  std::string out;
  out.reserve(512 + scene.cloud.size() * kRecordBytes);
  out += "ply\n";
  out += "format binary_little_endian 1.0\n";
  out += "comment vfz:scene_id=" + scene.meta.scene_id + "\n";
  out += "comment vfz:seed=" + std::to_string(scene.meta.seed) + "\n";
  out += "comment vfz:template_id=" + scene.meta.template_id + "\n";
  out += "comment vfz:instance_classes=" +
         encode_instance_classes(scene.meta.instance_classes) + "\n";
  out += "comment vfz:scene_yaw=" + format_double(scene.meta.scene_yaw) + "\n";
  out += "element vertex " + std::to_string(scene.cloud.size()) + "\n";
  for (const char* p : kProperties) {
    out += p;
    out += '\n';
  }
  out += "end_header\n";

  for (std::size_t i = 0; i < scene.cloud.size(); ++i) {
    const auto& p = scene.cloud.points[i];
    put_f32_le(out, static_cast<float>(p.x));
    put_f32_le(out, static_cast<float>(p.y));
    put_f32_le(out, static_cast<float>(p.z));
    out.push_back(static_cast<char>(scene.cloud.colors[i].r));
    out.push_back(static_cast<char>(scene.cloud.colors[i].g));
    out.push_back(static_cast<char>(scene.cloud.colors[i].b));
    put_u16_le(out, static_cast<std::uint16_t>(scene.cloud.sem[i]));
    put_u16_le(out, static_cast<std::uint16_t>(scene.cloud.ins[i]));
  }
  return out;
}

SceneFile read_scene_ply(std::string_view bytes) {
  SceneFile scene;
  std::size_t pos = 0;
  auto next_line = [&]() -> std::string_view {
    if (pos >= bytes.size()) throw ParseError("ply: header ended early");
    std::size_t eol = bytes.find('\n', pos);
    if (eol == std::string_view::npos) {
      throw ParseError("ply: unterminated header line");
    }
    std::string_view line = bytes.substr(pos, eol - pos);
    pos = eol + 1;
    return line;
  };

  if (next_line() != "ply") throw ParseError("ply: missing magic");
  if (next_line() != "format binary_little_endian 1.0") {
    throw ParseError("ply: format must be binary_little_endian 1.0");
  }

  std::size_t vertex_count = 0;
  bool have_element = false;
  std::size_t property_index = 0;
  bool saw_yaw = false;

  for (;;) {
    const std::string_view line = next_line();
    if (line == "end_header") break;

    if (line.starts_with("comment ")) {
      const std::string_view c = line.substr(8);
      if (!c.starts_with("vfz:")) continue;  // foreign comments are fine
      const std::string_view kv = c.substr(4);
      const std::size_t eq = kv.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("ply: malformed vfz comment '" + std::string(c) + "'");
      }
      const std::string_view key = kv.substr(0, eq);
      const std::string_view value = kv.substr(eq + 1);
      if (key == "scene_id") {
        scene.meta.scene_id = std::string(value);
      } else if (key == "seed") {
        const auto r = std::from_chars(value.data(), value.data() + value.size(),
                                       scene.meta.seed);
        if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
          throw ParseError("ply: bad seed value");
        }
      } else if (key == "template_id") {
        scene.meta.template_id = std::string(value);
      } else if (key == "instance_classes") {
        scene.meta.instance_classes = decode_instance_classes(value);
      } else if (key == "scene_yaw") {
        const auto r = std::from_chars(value.data(), value.data() + value.size(),
                                       scene.meta.scene_yaw);
        if (r.ec != std::errc{} || r.ptr != value.data() + value.size()) {
          throw ParseError("ply: bad scene_yaw value");
        }
        saw_yaw = true;
      } else {
        throw ParseError("ply: unknown vfz key '" + std::string(key) + "'");
      }
    } else if (line.starts_with("element ")) {
      if (have_element) throw ParseError("ply: multiple elements unsupported");
      const std::string_view rest = line.substr(8);
      if (!rest.starts_with("vertex ")) {
        throw ParseError("ply: only the vertex element is supported, got '" +
                         std::string(line) + "'");
      }
      const std::string_view num = rest.substr(7);
      const auto r =
          std::from_chars(num.data(), num.data() + num.size(), vertex_count);
      if (r.ec != std::errc{} || r.ptr != num.data() + num.size()) {
        throw ParseError("ply: bad vertex count");
      }
      have_element = true;
    } else if (line.starts_with("property ")) {
      if (!have_element) throw ParseError("ply: property before element");
      if (property_index >= std::size(kProperties) ||
          line != kProperties[property_index]) {
        throw ParseError("ply: unexpected property '" + std::string(line) +
                         "' at position " + std::to_string(property_index));
      }
      ++property_index;
    } else {
      throw ParseError("ply: unrecognized header line '" + std::string(line) +
                       "'");
    }
  }

  if (!have_element) throw ParseError("ply: missing vertex element");
  if (property_index != std::size(kProperties)) {
    throw ParseError("ply: expected " +
                     std::to_string(std::size(kProperties)) +
                     " properties, found " + std::to_string(property_index));
  }
  (void)saw_yaw;  // older files without the key default to yaw 0

  const std::size_t body = bytes.size() - pos;
  if (body != vertex_count * kRecordBytes) {
    throw ParseError("ply: body is " + std::to_string(body) +
                     " bytes, expected " +
                     std::to_string(vertex_count * kRecordBytes));
  }

  scene.cloud.reserve(vertex_count);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data()) + pos;
  for (std::size_t i = 0; i < vertex_count; ++i, p += kRecordBytes) {
    scene.cloud.push_back(
        {static_cast<double>(get_f32_le(p)),
         static_cast<double>(get_f32_le(p + 4)),
         static_cast<double>(get_f32_le(p + 8))},
        {p[12], p[13], p[14]}, get_u16_le(p + 15), get_u16_le(p + 17));
  }

  check_scene(scene);
  return scene;
}

std::string write_scene_sidecar(const SceneMeta& meta) {
  nlohmann::ordered_json doc;
  doc["scene_id"] = meta.scene_id;
  doc["seed"] = meta.seed;
  doc["template_id"] = meta.template_id;
  nlohmann::ordered_json classes = nlohmann::ordered_json::object();
  for (const auto& [ins, cls] : meta.instance_classes) {
    classes[std::to_string(ins)] = cls;
  }
  doc["instance_classes"] = classes;
  doc["scene_yaw"] = meta.scene_yaw;
  return doc.dump(2) + "\n";
}

}  // namespace virtfusion::assetio

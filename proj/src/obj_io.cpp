// SPDX-License-Identifier: Apache-2.0

#include "virtfusion/assetio/obj_io.hpp"

#include <charconv>
#include <cstdlib>

#include "virtfusion/errors.hpp"

namespace virtfusion::assetio {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("obj line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

double parse_number(std::string_view tok, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    fail(line, "non-numeric value '" + std::string(tok) + "'");
  }
  return value;
}

// Face corner tokens look like "3", "3/1", "3/1/2", or "3//2"; only the
// vertex index matters here. Negative indices count back from the end.
std::uint32_t parse_corner(std::string_view tok, std::size_t vertex_count,
                           std::size_t line) {
  const std::size_t slash = tok.find('/');
  const std::string_view head = slash == std::string_view::npos
                                    ? tok
                                    : tok.substr(0, slash);
  long long raw = 0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), raw);
  if (ec != std::errc{} || ptr != head.data() + head.size() || raw == 0) {
    fail(line, "bad face index '" + std::string(tok) + "'");
  }
  const long long resolved =
      raw > 0 ? raw - 1 : static_cast<long long>(vertex_count) + raw;
  if (resolved < 0 || resolved >= static_cast<long long>(vertex_count)) {
    fail(line, "face index " + std::to_string(raw) + " out of range (" +
                   std::to_string(vertex_count) + " vertices)");
  }
  return static_cast<std::uint32_t>(resolved);
}

void append_number(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

MeshAsset parse_obj(std::string_view text) {
  MeshAsset mesh;
  bool any_colors = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                       : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    const auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;

    if (toks[0] == "v") {
      if (toks.size() != 4 && toks.size() != 7) {
        fail(line_no, "vertex needs 3 coordinates (plus optional r g b)");
      }
      mesh.vertices.push_back({parse_number(toks[1], line_no),
                               parse_number(toks[2], line_no),
                               parse_number(toks[3], line_no)});
      if (toks.size() == 7) {
        mesh.colors.push_back({static_cast<float>(parse_number(toks[4], line_no)),
                               static_cast<float>(parse_number(toks[5], line_no)),
                               static_cast<float>(parse_number(toks[6], line_no))});
        any_colors = true;
      } else if (any_colors) {
        fail(line_no, "mixed colored and uncolored vertices");
      }
    } else if (toks[0] == "f") {
      if (toks.size() < 4) fail(line_no, "face needs at least 3 corners");
      std::vector<std::uint32_t> corners;
      corners.reserve(toks.size() - 1);
      for (std::size_t i = 1; i < toks.size(); ++i) {
        corners.push_back(parse_corner(toks[i], mesh.vertices.size(), line_no));
      }
      // Fan split: (0, i, i+1).
      for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
        mesh.faces.push_back({corners[0], corners[i], corners[i + 1]});
      }
    }
    // Everything else (vn, vt, usemtl, mtllib, o, g, s, ...) is skipped.
  }

  if (any_colors && mesh.colors.size() != mesh.vertices.size()) {
    throw ParseError("obj: colored and uncolored vertices mixed");
  }
  return mesh;
}

std::string write_obj(const MeshAsset& mesh) {
  if (mesh.has_colors() && mesh.colors.size() != mesh.vertices.size()) {
    throw ValidationError("obj write: color count != vertex count");
  }
  std::string out;
  out.reserve(mesh.vertices.size() * 32 + mesh.faces.size() * 16);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    out += "v ";
    append_number(out, mesh.vertices[i].x);
    out += ' ';
    append_number(out, mesh.vertices[i].y);
    out += ' ';
    append_number(out, mesh.vertices[i].z);
    if (mesh.has_colors()) {
      for (float c : mesh.colors[i]) {
        out += ' ';
        append_number(out, static_cast<double>(c));
      }
    }
    out += '\n';
  }
  for (const auto& f : mesh.faces) {
    out += "f ";
    out += std::to_string(f[0] + 1);
    out += ' ';
    out += std::to_string(f[1] + 1);
    out += ' ';
    out += std::to_string(f[2] + 1);
    out += '\n';
  }
  return out;
}

}  // namespace virtfusion::assetio

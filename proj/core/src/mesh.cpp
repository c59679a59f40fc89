// Copyright 2026 The BrainPaint Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "brainpaint/mesh.hpp"

#include <algorithm>
#include <limits>

#include "text_util.hpp"

namespace brainpaint {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && detail::is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !detail::is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void obj_error(int line, const std::string& message) {
  throw Error(ErrorKind::kInput, "malformed_obj",
              "OBJ line " + std::to_string(line) + ": " + message);
}

Vec3 parse_triple(const std::vector<std::string_view>& tok, int line) {
  if (tok.size() < 4) obj_error(line, "expected 3 coordinates");
  Vec3 v;
  double* dst[] = {&v.x, &v.y, &v.z};
  for (int i = 0; i < 3; ++i) {
    auto value = detail::parse_double(tok[i + 1]);
    if (!value) obj_error(line, "bad number '" + std::string(tok[i + 1]) + "'");
    *dst[i] = *value;
  }
  return v;
}

// Resolves a 1-based or negative OBJ index against `count` entries.
std::uint32_t resolve_index(std::string_view text, std::size_t count, int line,
                            const char* what) {
  if (text.empty()) obj_error(line, std::string("missing ") + what + " index");
  long long idx = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), idx);
  if (ec != std::errc{} || ptr != text.data() + text.size() || idx == 0) {
    obj_error(line, std::string("bad ") + what + " index '" + std::string(text) + "'");
  }
  long long resolved = idx > 0 ? idx - 1 : static_cast<long long>(count) + idx;
  if (resolved < 0 || resolved >= static_cast<long long>(count)) {
    obj_error(line, std::string(what) + " index " + std::to_string(idx) +
                        " out of range (have " + std::to_string(count) + ")");
  }
  return static_cast<std::uint32_t>(resolved);
}

struct FaceCorner {
  std::uint32_t vertex;
  std::optional<std::uint32_t> normal;
};

}  // namespace

double triangle_area(const TriangleMesh& mesh, const Triangle& tri) {
  const Vec3& a = mesh.vertices[tri[0]];
  const Vec3& b = mesh.vertices[tri[1]];
  const Vec3& c = mesh.vertices[tri[2]];
  return 0.5 * length(cross(b - a, c - a));
}

TriangleMesh parse_obj(std::string_view text, std::string name, Diagnostics* warnings) {
  std::vector<Vec3> positions;
  std::vector<Vec3> file_normals;
  std::vector<std::array<FaceCorner, 3>> faces;
  std::size_t texcoords = 0;

  int line_no = 0;
  for (std::string_view line : detail::split_lines(text)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    const std::string_view kind = tok[0];
    if (kind == "v") {
      positions.push_back(parse_triple(tok, line_no));
    } else if (kind == "vn") {
      file_normals.push_back(parse_triple(tok, line_no));
    } else if (kind == "vt") {
      ++texcoords;
    } else if (kind == "f") {
      if (tok.size() < 4) obj_error(line_no, "face needs at least 3 vertices");
      std::vector<FaceCorner> corners;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const auto parts = detail::split(tok[i], '/');
        if (parts.size() > 3) obj_error(line_no, "bad face vertex '" + std::string(tok[i]) + "'");
        FaceCorner corner{resolve_index(parts[0], positions.size(), line_no, "vertex"),
                          std::nullopt};
        if (parts.size() >= 2 && !parts[1].empty()) {
          resolve_index(parts[1], texcoords, line_no, "texture");
        }
        if (parts.size() == 3) {
          corner.normal = resolve_index(parts[2], file_normals.size(), line_no, "normal");
        }
        corners.push_back(corner);
      }
      for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
        faces.push_back({corners[0], corners[i], corners[i + 1]});
      }
    }
  }
  if (positions.empty()) obj_error(line_no, "no vertices");
  if (faces.empty()) obj_error(line_no, "zero faces");

  TriangleMesh mesh;
  mesh.name = std::move(name);
  mesh.vertices = std::move(positions);
  std::vector<std::optional<Vec3>> assigned(mesh.vertices.size());
  std::size_t dropped = 0;
  for (const auto& face : faces) {
    Triangle tri{face[0].vertex, face[1].vertex, face[2].vertex};
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] ||
        triangle_area(mesh, tri) == 0.0) {
      ++dropped;
      continue;
    }
    mesh.triangles.push_back(tri);
    for (const FaceCorner& corner : face) {
      if (corner.normal && !assigned[corner.vertex]) {
        const Vec3 n = normalized(file_normals[*corner.normal]);
        if (length(n) > 0.0) assigned[corner.vertex] = n;
      }
    }
  }
  if (dropped && warnings) {
    warnings->push_back(make_warning(
        "degenerate_triangles",
        std::to_string(dropped) + " zero-area triangle(s) dropped from mesh '" +
            mesh.name + "'"));
  }
  if (mesh.triangles.empty()) obj_error(line_no, "zero faces after dropping degenerate ones");

  const bool all_assigned = std::all_of(assigned.begin(), assigned.end(),
                                        [](const auto& n) { return n.has_value(); });
  if (!all_assigned) {
    mesh = compute_vertex_normals(mesh, warnings);
  } else {
    mesh.normals.resize(mesh.vertices.size());
  }
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (assigned[i]) mesh.normals[i] = *assigned[i];
  }
  return mesh;
}

TriangleMesh load_obj_file(const std::filesystem::path& path, Diagnostics* warnings) {
  const std::string text = detail::read_file(path);
  try {
    return parse_obj(text, path.stem().string(), warnings);
  } catch (const Error& e) {
    throw Error(e.kind(), e.code(), path.string() + ": " + e.what(), e.details());
  }
}

std::string serialize_obj(const TriangleMesh& mesh) {
  std::string out;
  out.reserve(mesh.vertices.size() * 80 + mesh.triangles.size() * 40);
  if (!mesh.name.empty()) out += "o " + mesh.name + "\n";
  for (const Vec3& v : mesh.vertices) {
    out += "v " + detail::format_double(v.x) + ' ' + detail::format_double(v.y) + ' ' +
           detail::format_double(v.z) + '\n';
  }
  for (const Vec3& n : mesh.normals) {
    out += "vn " + detail::format_double(n.x) + ' ' + detail::format_double(n.y) + ' ' +
           detail::format_double(n.z) + '\n';
  }
  const bool with_normals = mesh.normals.size() == mesh.vertices.size();
  for (const Triangle& t : mesh.triangles) {
    out += 'f';
    for (std::uint32_t idx : t) {
      const std::string i = std::to_string(idx + 1);
      out += ' ' + i;
      if (with_normals) out += "//" + i;
    }
    out += '\n';
  }
  return out;
}

TriangleMesh compute_vertex_normals(const TriangleMesh& mesh, Diagnostics* warnings) {
  TriangleMesh out = mesh;
  std::vector<Vec3> sums(mesh.vertices.size());
  for (const Triangle& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    // |cross| is twice the area, so the raw cross product is area-weighted.
    const Vec3 weighted = cross(b - a, c - a);
    for (std::uint32_t idx : t) sums[idx] += weighted;
  }
  out.normals.assign(mesh.vertices.size(), Vec3{});
  std::size_t zero = 0;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    const double len = length(sums[i]);
    if (len > 0.0 && std::isfinite(len)) {
      out.normals[i] = sums[i] / len;
    } else {
      out.normals[i] = Vec3{0.0, 0.0, 1.0};
      ++zero;
    }
  }
  if (zero && warnings) {
    warnings->push_back(make_warning(
        "zero_normal", std::to_string(zero) + " vertex normal(s) of mesh '" + mesh.name +
                           "' had no defined direction; using (0,0,1)"));
  }
  return out;
}

Aabb bounds(const TriangleMesh& mesh) {
  if (mesh.vertices.empty()) {
    throw Error(ErrorKind::kRender, "empty_mesh", "bounds of an empty mesh");
  }
  Aabb box{mesh.vertices.front(), mesh.vertices.front()};
  for (const Vec3& v : mesh.vertices) {
    box.min = {std::min(box.min.x, v.x), std::min(box.min.y, v.y), std::min(box.min.z, v.z)};
    box.max = {std::max(box.max.x, v.x), std::max(box.max.y, v.y), std::max(box.max.z, v.z)};
  }
  return box;
}

Aabb union_bounds(std::span<const Aabb> boxes) {
  if (boxes.empty()) {
    throw Error(ErrorKind::kRender, "empty_mesh", "union of zero bounding boxes");
  }
  Aabb box = boxes.front();
  for (const Aabb& b : boxes) {
    box.min = {std::min(box.min.x, b.min.x), std::min(box.min.y, b.min.y),
               std::min(box.min.z, b.min.z)};
    box.max = {std::max(box.max.x, b.max.x), std::max(box.max.y, b.max.y),
               std::max(box.max.z, b.max.z)};
  }
  return box;
}

std::optional<std::string> check_mesh_invariants(const TriangleMesh& mesh) {
  if (mesh.normals.size() != mesh.vertices.size()) {
    return "normal count " + std::to_string(mesh.normals.size()) +
           " differs from vertex count " + std::to_string(mesh.vertices.size());
  }
  for (std::size_t i = 0; i < mesh.triangles.size(); ++i) {
    for (std::uint32_t idx : mesh.triangles[i]) {
      if (idx >= mesh.vertices.size()) {
        return "triangle " + std::to_string(i) + " index out of range";
      }
    }
    if (!(triangle_area(mesh, mesh.triangles[i]) > 0.0)) {
      return "triangle " + std::to_string(i) + " is degenerate";
    }
  }
  for (std::size_t i = 0; i < mesh.normals.size(); ++i) {
    if (std::abs(length(mesh.normals[i]) - 1.0) > 1e-6) {
      return "normal " + std::to_string(i) + " is not unit length";
    }
  }
  return std::nullopt;
}

}  // namespace brainpaint

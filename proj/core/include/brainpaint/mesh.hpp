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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "brainpaint/atlas.hpp"
#include "brainpaint/error.hpp"
#include "brainpaint/vec3.hpp"

namespace brainpaint {

using Triangle = std::array<std::uint32_t, 3>;

/// Indexed triangle mesh in model units. Counter-clockwise winding seen from
/// outside; one unit normal per vertex.
struct TriangleMesh {
  std::string name;
  std::vector<Vec3> vertices;
  std::vector<Vec3> normals;
  std::vector<Triangle> triangles;

  bool operator==(const TriangleMesh&) const = default;
};

struct Aabb {
  Vec3 min;
  Vec3 max;

  Vec3 center() const { return (min + max) * 0.5; }
  Vec3 extent() const { return max - min; }
  /// Radius of the sphere through the box corners.
  double bounding_radius() const { return 0.5 * length(extent()); }

  bool operator==(const Aabb&) const = default;
};

/// Reads Wavefront OBJ text. Handles v, vn and f records ("v", "v/vt",
/// "v//vn", "v/vt/vn", negative indices); polygons are fan-triangulated from
/// their first vertex. Everything else (vt, groups, materials) is skipped.
/// Missing normals are computed with compute_vertex_normals. Zero-area
/// triangles are dropped with a warning.
TriangleMesh parse_obj(std::string_view text, std::string name = {},
                       Diagnostics* warnings = nullptr);

TriangleMesh load_obj_file(const std::filesystem::path& path,
                           Diagnostics* warnings = nullptr);

/// v / vn / f text with round-trip-exact coordinates.
std::string serialize_obj(const TriangleMesh& mesh);

/// Area-weighted vertex normals. A vertex whose incident face normals sum to
/// zero gets (0, 0, 1) and a warning.
TriangleMesh compute_vertex_normals(const TriangleMesh& mesh,
                                    Diagnostics* warnings = nullptr);

Aabb bounds(const TriangleMesh& mesh);
Aabb union_bounds(std::span<const Aabb> boxes);

double triangle_area(const TriangleMesh& mesh, const Triangle& tri);

/// Describes the first violated TriangleMesh invariant, if any.
std::optional<std::string> check_mesh_invariants(const TriangleMesh& mesh);

/// Unit icosphere: 12 vertices / 20 faces, each subdivision splits every face
/// into four.
TriangleMesh make_icosphere(int subdivisions);

/// Deterministic stand-in for a template mesh: an icosphere subdivided twice
/// (162 vertices, 320 triangles), scaled and placed from a hash of the region
/// name and seed. Right-side meshes mirror the left ones in x.
TriangleMesh generate_fixture_mesh(const RegionDef& region, std::uint64_t seed,
                                   Side side = Side::kLeft,
                                   Surface surface = Surface::kPial);

/// Writes every mesh instance (both surfaces) of the named atlases under
/// `out_dir/<atlas>/`, using the file names load_atlas expects. Returns the
/// number of files written.
std::size_t write_fixture_assets(const std::filesystem::path& out_dir,
                                 std::uint64_t seed,
                                 const std::vector<std::string>& atlas_names);

}  // namespace brainpaint

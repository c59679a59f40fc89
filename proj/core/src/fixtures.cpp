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

// Synthetic template meshes. Scene frame: +x right, +y posterior, +z up; the
// left hemisphere sits at x < 0. One model unit is roughly a centimetre.

#include <map>
#include <numbers>

#include "brainpaint/mesh.hpp"
#include "text_util.hpp"

namespace brainpaint {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// splitmix64; reproducible on every platform, unlike std distributions.
class HashStream {
 public:
  explicit HashStream(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct Placement {
  Vec3 center;
  Vec3 radii;
};

// Placement of the left-side (or midline) instance.
Placement place(const RegionDef& region, std::uint64_t seed, Surface surface) {
  HashStream h(fnv1a(region.canonical_name) ^ (seed * 0x9e3779b97f4a7c15ull));
  Placement p;
  if (region.klass == RegionClass::kCortical) {
    // A patch on the shell of the hemisphere ellipsoid.
    const double z = 2.0 * h.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * h.uniform();
    const double r = std::sqrt(1.0 - z * z);
    const Vec3 dir{r * std::cos(phi), r * std::sin(phi), z};
    const bool inflated = surface == Surface::kInflated;
    const double shell = inflated ? 1.0 : 0.88;
    p.center = Vec3{-3.4, 0.0, 0.6} + Vec3{2.9 * dir.x, 7.6 * dir.y, 4.8 * dir.z} * shell;
    const double grow = inflated ? 1.15 : 1.0;
    p.radii = Vec3{1.1 + 0.9 * h.uniform(), 1.1 + 0.9 * h.uniform(),
                   1.1 + 0.9 * h.uniform()} * grow;
    if (inflated) p.radii.x *= 0.7;
  } else {
    const Vec3 jitter{h.uniform() - 0.5, h.uniform() - 0.5, h.uniform() - 0.5};
    p.radii = Vec3{0.45 + 0.5 * h.uniform(), 0.6 + 0.9 * h.uniform(),
                   0.45 + 0.5 * h.uniform()};
    if (region.hemisphere == Hemisphere::kMidline) {
      p.center = Vec3{0.0, 1.2 + 1.6 * jitter.y, -2.6 + 1.2 * jitter.z};
    } else {
      p.center = Vec3{-1.7 + 1.4 * jitter.x, 0.4 + 4.0 * jitter.y, -0.6 + 2.4 * jitter.z};
    }
  }
  return p;
}

}  // namespace

TriangleMesh make_icosphere(int subdivisions) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh mesh;
  mesh.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                   {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                   {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (Vec3& v : mesh.vertices) v = normalized(v);
  mesh.triangles = {{0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                    {1, 5, 9},  {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                    {3, 9, 4},  {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                    {4, 9, 5},  {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  for (int level = 0; level < subdivisions; ++level) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoints;
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
      const auto key = std::minmax(a, b);
      auto it = midpoints.find(key);
      if (it != midpoints.end()) return it->second;
      const auto idx = static_cast<std::uint32_t>(mesh.vertices.size());
      mesh.vertices.push_back(normalized((mesh.vertices[a] + mesh.vertices[b]) * 0.5));
      midpoints.emplace(key, idx);
      return idx;
    };
    std::vector<Triangle> next;
    next.reserve(mesh.triangles.size() * 4);
    for (const Triangle& tri : mesh.triangles) {
      const std::uint32_t ab = midpoint(tri[0], tri[1]);
      const std::uint32_t bc = midpoint(tri[1], tri[2]);
      const std::uint32_t ca = midpoint(tri[2], tri[0]);
      next.push_back({tri[0], ab, ca});
      next.push_back({tri[1], bc, ab});
      next.push_back({tri[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    mesh.triangles = std::move(next);
  }
  mesh.normals = mesh.vertices;
  return mesh;
}

TriangleMesh generate_fixture_mesh(const RegionDef& region, std::uint64_t seed, Side side,
                                   Surface surface) {
  static const TriangleMesh kSphere = make_icosphere(2);
  const Placement p = place(region, seed, surface);

  TriangleMesh mesh;
  mesh.name = region.canonical_name;
  mesh.triangles = kSphere.triangles;
  mesh.vertices.reserve(kSphere.vertices.size());
  for (const Vec3& v : kSphere.vertices) {
    mesh.vertices.push_back(p.center + Vec3{v.x * p.radii.x, v.y * p.radii.y, v.z * p.radii.z});
  }
  mesh = compute_vertex_normals(mesh);

  if (side == Side::kRight) {
    for (Vec3& v : mesh.vertices) v.x = -v.x;
    for (Vec3& n : mesh.normals) n.x = -n.x;
    // Mirroring flips orientation; swap two corners to keep faces outward.
    for (Triangle& t : mesh.triangles) std::swap(t[1], t[2]);
  }
  return mesh;
}

std::size_t write_fixture_assets(const std::filesystem::path& out_dir, std::uint64_t seed,
                                 const std::vector<std::string>& atlas_names) {
  std::size_t written = 0;
  for (const std::string& name : atlas_names) {
    const Atlas atlas = read_atlas_definition(name, out_dir);
    const auto dir = out_dir / name;
    std::filesystem::create_directories(dir);
    for (const RegionDef& region : atlas.regions()) {
      for (Side side : sides_of(region)) {
        for (Surface surface : {Surface::kPial, Surface::kInflated}) {
          const auto file = dir / mesh_file_name(region, side, surface);
          detail::write_file(file, serialize_obj(generate_fixture_mesh(region, seed, side, surface)));
          ++written;
          // Subcortical meshes do not depend on the surface.
          if (region.klass == RegionClass::kSubcortical) break;
        }
      }
    }
  }
  return written;
}

}  // namespace brainpaint

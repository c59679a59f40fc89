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

// Scene assembly. Frame convention: +x right, +y posterior, +z up. "Front"
// views look along +y from in front of the face.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brainpaint/atlas.hpp"
#include "brainpaint/gradient.hpp"
#include "brainpaint/mesh.hpp"
#include "brainpaint/renderer.hpp"

namespace brainpaint {

enum class ViewPreset {
  kCorticalFront,
  kCorticalBack,
  kCorticalLateral,
  kSubcorticalFront,
  kSubcorticalLateral,
};

const char* to_string(ViewPreset view);
ViewPreset parse_view_preset(std::string_view name);
bool is_cortical(ViewPreset view);
std::span<const ViewPreset> all_view_presets();
/// cortical_front, cortical_back, subcortical_front.
std::vector<ViewPreset> default_views();

inline constexpr double kDefaultVfovDegrees = 35.0;
inline constexpr double kDefaultGlassOpacity = 0.12;
inline constexpr double kRegionAmbient = 0.25;
inline constexpr double kRegionDiffuse = 0.6;
inline constexpr double kHeadlightIntensity = 0.9;
inline constexpr double kFillLightIntensity = 0.35;
/// Distance margin applied on top of the bounding-sphere fit.
inline constexpr double kFramingMargin = 1.1;

/// Camera on the preset's axis (front: -y, back: +y, lateral: -x from the
/// centre) at distance r / tan(vfov/2) * 1.1, aimed at the bounds centre, where
/// r is the bounding-sphere radius of `bounds`.
Camera frame_camera(const Aabb& bounds, ViewPreset view, double vfov_degrees);

/// Headlight along the view direction plus a fill light from the upper left.
std::vector<DirectionalLight> default_lights(const Camera& camera);

Material region_material(Rgb8 color);

struct SceneOptions {
  /// Region names (resolved through the atlas) to leave out.
  std::vector<std::string> exclude;
  /// Cortical views: also draw right-hemisphere regions.
  bool include_right_hemisphere = false;
  double glass_opacity = kDefaultGlassOpacity;
  double vfov_degrees = kDefaultVfovDegrees;
  Rgb8 background{0, 0, 0};
};

struct SceneItem {
  std::string region;  // canonical name
  Side side = Side::kLeft;
  std::filesystem::path mesh;
  Material material;

  bool operator==(const SceneItem&) const = default;
};

/// The transparent reference hemisphere: many meshes, one material.
struct GlassGroup {
  Material material;
  std::vector<std::filesystem::path> meshes;

  bool operator==(const GlassGroup&) const = default;
};

struct SceneSpec {
  ViewPreset view = ViewPreset::kCorticalFront;
  std::vector<SceneItem> items;
  std::optional<GlassGroup> glass;
  Camera camera;
  std::vector<DirectionalLight> lights;
  Rgb8 background{0, 0, 0};

  bool operator==(const SceneSpec&) const = default;
};

/// Thread-safe cache of meshes loaded from OBJ files.
class MeshLibrary {
 public:
  std::shared_ptr<const TriangleMesh> get(const std::filesystem::path& path);
  Aabb bounds_of(const std::filesystem::path& path);
  /// Warnings produced while loading, in load order.
  Diagnostics warnings() const;

 private:
  struct Entry {
    std::shared_ptr<const TriangleMesh> mesh;
    Aabb box;
  };
  const Entry& entry(const std::filesystem::path& path);

  mutable std::mutex mutex_;
  std::map<std::filesystem::path, Entry> meshes_;
  Diagnostics warnings_;
};

using RegionValues = std::map<std::string, double>;

/// Left-hemisphere cortical regions (plus right ones on request) and midline
/// structures, each coloured by color_at(gradient, value); opaque.
SceneSpec build_cortical_scene(const Atlas& atlas, const RegionValues& values,
                               const GradientSpec& gradient, ViewPreset view,
                               const SceneOptions& options, MeshLibrary& meshes);

/// Subcortical regions of both hemispheres and midline structures, opaque
/// and coloured, inside the right cortical hemisphere drawn as one white
/// glass group.
SceneSpec build_subcortical_scene(const Atlas& atlas, const RegionValues& values,
                                  const GradientSpec& gradient, ViewPreset view,
                                  const SceneOptions& options, MeshLibrary& meshes);

/// Dispatches on the view's class.
SceneSpec build_scene(const Atlas& atlas, const RegionValues& values,
                      const GradientSpec& gradient, ViewPreset view,
                      const SceneOptions& options, MeshLibrary& meshes);

struct RenderSettings {
  int width = 1200;
  int height = 900;
  /// Render at k times the resolution, then box-filter down.
  int supersample = 1;
  RasterOptions raster;
};

/// Rasterizes a SceneSpec. Scene item i is render item i; glass meshes follow.
/// The trace, when requested, is at the supersampled resolution.
ImageBuffer render_scene(const SceneSpec& scene, MeshLibrary& meshes,
                         const RenderSettings& settings, RenderTrace* trace = nullptr);

}  // namespace brainpaint

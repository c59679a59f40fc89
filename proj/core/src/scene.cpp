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

#include "brainpaint/scene.hpp"

#include <array>
#include <numbers>
#include <set>

#include "brainpaint/error.hpp"

namespace brainpaint {

namespace {

constexpr std::array<ViewPreset, 5> kAllViews = {
    ViewPreset::kCorticalFront, ViewPreset::kCorticalBack, ViewPreset::kCorticalLateral,
    ViewPreset::kSubcorticalFront, ViewPreset::kSubcorticalLateral};

std::set<std::string> resolve_exclusions(const Atlas& atlas,
                                         const std::vector<std::string>& names) {
  std::set<std::string> out;
  for (const std::string& name : names) {
    try {
      out.insert(resolve_region(atlas, name).canonical_name);
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, "unknown_exclusion",
                  std::string("exclude: ") + e.what(), e.details());
    }
  }
  return out;
}

double value_of(const RegionValues& values, const std::string& region) {
  auto it = values.find(region);
  return it == values.end() ? 0.0 : it->second;
}

void finish_scene(SceneSpec& scene, const SceneOptions& options, MeshLibrary& meshes) {
  if (scene.items.empty() && !scene.glass) {
    throw Error(ErrorKind::kConfig, "empty_scene",
                std::string("view ") + to_string(scene.view) +
                    " has nothing to draw after exclusions");
  }
  std::vector<Aabb> boxes;
  for (const SceneItem& item : scene.items) boxes.push_back(meshes.bounds_of(item.mesh));
  if (scene.glass) {
    for (const auto& path : scene.glass->meshes) boxes.push_back(meshes.bounds_of(path));
  }
  scene.camera = frame_camera(union_bounds(boxes), scene.view, options.vfov_degrees);
  scene.lights = default_lights(scene.camera);
  scene.background = options.background;
}

}  // namespace

const char* to_string(ViewPreset view) {
  switch (view) {
    case ViewPreset::kCorticalFront:
      return "cortical_front";
    case ViewPreset::kCorticalBack:
      return "cortical_back";
    case ViewPreset::kCorticalLateral:
      return "cortical_lateral";
    case ViewPreset::kSubcorticalFront:
      return "subcortical_front";
    case ViewPreset::kSubcorticalLateral:
      return "subcortical_lateral";
  }
  return "?";
}

ViewPreset parse_view_preset(std::string_view name) {
  for (ViewPreset v : kAllViews) {
    if (name == to_string(v)) return v;
  }
  throw Error(ErrorKind::kConfig, "unknown_view",
              "unknown view '" + std::string(name) + "'");
}

bool is_cortical(ViewPreset view) {
  return view == ViewPreset::kCorticalFront || view == ViewPreset::kCorticalBack ||
         view == ViewPreset::kCorticalLateral;
}

std::span<const ViewPreset> all_view_presets() { return kAllViews; }

std::vector<ViewPreset> default_views() {
  return {ViewPreset::kCorticalFront, ViewPreset::kCorticalBack,
          ViewPreset::kSubcorticalFront};
}

Camera frame_camera(const Aabb& bounds, ViewPreset view, double vfov_degrees) {
  const double r = bounds.bounding_radius();
  if (!(r > 0.0)) {
    throw Error(ErrorKind::kRender, "degenerate_bounds",
                "cannot frame a scene with zero extent");
  }
  const double half_angle = vfov_degrees * std::numbers::pi / 360.0;
  const double d = r / std::tan(half_angle) * kFramingMargin;
  Vec3 axis;
  switch (view) {
    case ViewPreset::kCorticalFront:
    case ViewPreset::kSubcorticalFront:
      axis = {0.0, -1.0, 0.0};
      break;
    case ViewPreset::kCorticalBack:
      axis = {0.0, 1.0, 0.0};
      break;
    case ViewPreset::kCorticalLateral:
    case ViewPreset::kSubcorticalLateral:
      axis = {-1.0, 0.0, 0.0};
      break;
  }
  Camera camera;
  camera.target = bounds.center();
  camera.eye = camera.target + axis * d;
  camera.up = {0.0, 0.0, 1.0};
  camera.vfov_degrees = vfov_degrees;
  camera.near_depth = std::max((d - r) * 0.5, d * 1e-3);
  camera.far_depth = d + 2.0 * r;
  return camera;
}

std::vector<DirectionalLight> default_lights(const Camera& camera) {
  const Vec3 forward = normalized(camera.target - camera.eye);
  const Vec3 right = normalized(cross(forward, camera.up));
  const Vec3 up = cross(right, forward);
  return {DirectionalLight{forward, kHeadlightIntensity},
          DirectionalLight{normalized(forward + right * 0.6 - up * 0.6), kFillLightIntensity}};
}

Material region_material(Rgb8 color) {
  return Material{color, 1.0, kRegionAmbient, kRegionDiffuse};
}

std::shared_ptr<const TriangleMesh> MeshLibrary::get(const std::filesystem::path& path) {
  return entry(path).mesh;
}

Aabb MeshLibrary::bounds_of(const std::filesystem::path& path) { return entry(path).box; }

Diagnostics MeshLibrary::warnings() const {
  std::lock_guard lock(mutex_);
  return warnings_;
}

const MeshLibrary::Entry& MeshLibrary::entry(const std::filesystem::path& path) {
  std::lock_guard lock(mutex_);
  auto it = meshes_.find(path);
  if (it != meshes_.end()) return it->second;
  auto mesh = std::make_shared<const TriangleMesh>(load_obj_file(path, &warnings_));
  Entry e{mesh, bounds(*mesh)};
  return meshes_.emplace(path, std::move(e)).first->second;
}

SceneSpec build_cortical_scene(const Atlas& atlas, const RegionValues& values,
                               const GradientSpec& gradient, ViewPreset view,
                               const SceneOptions& options, MeshLibrary& meshes) {
  if (!is_cortical(view)) {
    throw Error(ErrorKind::kConfig, "wrong_view_class",
                std::string(to_string(view)) + " is not a cortical view");
  }
  const auto excluded = resolve_exclusions(atlas, options.exclude);
  SceneSpec scene;
  scene.view = view;
  for (const RegionDef& region : atlas.regions()) {
    if (excluded.count(region.canonical_name)) continue;
    const bool midline = region.hemisphere == Hemisphere::kMidline;
    if (region.klass != RegionClass::kCortical && !midline) continue;
    const Material material = region_material(color_at(gradient, value_of(values, region.canonical_name)));
    for (Side side : sides_of(region)) {
      if (side == Side::kRight && !options.include_right_hemisphere) continue;
      scene.items.push_back({region.canonical_name, side, atlas.mesh_path(region, side), material});
    }
  }
  finish_scene(scene, options, meshes);
  return scene;
}

SceneSpec build_subcortical_scene(const Atlas& atlas, const RegionValues& values,
                                  const GradientSpec& gradient, ViewPreset view,
                                  const SceneOptions& options, MeshLibrary& meshes) {
  if (is_cortical(view)) {
    throw Error(ErrorKind::kConfig, "wrong_view_class",
                std::string(to_string(view)) + " is not a subcortical view");
  }
  const auto excluded = resolve_exclusions(atlas, options.exclude);
  SceneSpec scene;
  scene.view = view;
  GlassGroup glass;
  glass.material = Material{{255, 255, 255}, options.glass_opacity, kRegionAmbient, kRegionDiffuse};
  for (const RegionDef& region : atlas.regions()) {
    if (excluded.count(region.canonical_name)) continue;
    const bool midline = region.hemisphere == Hemisphere::kMidline;
    if (region.klass == RegionClass::kCortical && !midline) {
      for (Side side : sides_of(region)) {
        if (side == Side::kRight) glass.meshes.push_back(atlas.mesh_path(region, side));
      }
      continue;
    }
    const Material material = region_material(color_at(gradient, value_of(values, region.canonical_name)));
    for (Side side : sides_of(region)) {
      scene.items.push_back({region.canonical_name, side, atlas.mesh_path(region, side), material});
    }
  }
  if (!glass.meshes.empty()) scene.glass = std::move(glass);
  finish_scene(scene, options, meshes);
  return scene;
}

SceneSpec build_scene(const Atlas& atlas, const RegionValues& values,
                      const GradientSpec& gradient, ViewPreset view,
                      const SceneOptions& options, MeshLibrary& meshes) {
  return is_cortical(view) ? build_cortical_scene(atlas, values, gradient, view, options, meshes)
                           : build_subcortical_scene(atlas, values, gradient, view, options, meshes);
}

ImageBuffer render_scene(const SceneSpec& scene, MeshLibrary& meshes,
                         const RenderSettings& settings, RenderTrace* trace) {
  const int k = std::max(1, settings.supersample);
  std::vector<std::shared_ptr<const TriangleMesh>> keep_alive;
  std::vector<RenderItem> items;
  for (const SceneItem& item : scene.items) {
    keep_alive.push_back(meshes.get(item.mesh));
    items.push_back({keep_alive.back().get(), item.material});
  }
  if (scene.glass) {
    for (const auto& path : scene.glass->meshes) {
      keep_alive.push_back(meshes.get(path));
      items.push_back({keep_alive.back().get(), scene.glass->material});
    }
  }
  if (static_cast<std::int64_t>(settings.width) * k > kMaxDimension ||
      static_cast<std::int64_t>(settings.height) * k > kMaxDimension) {
    throw Error(ErrorKind::kRender, "resolution_limit",
                "supersampled resolution exceeds " + std::to_string(kMaxDimension) +
                    " pixels per side");
  }
  ImageBuffer image = rasterize(items, scene.camera, scene.lights, scene.background,
                                settings.width * k, settings.height * k, settings.raster, trace);
  return downsample(image, k);
}

}  // namespace brainpaint

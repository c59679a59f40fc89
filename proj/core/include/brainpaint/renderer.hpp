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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "brainpaint/color.hpp"
#include "brainpaint/mesh.hpp"
#include "brainpaint/vec3.hpp"

namespace brainpaint {

/// Perspective look-at camera. `vfov_degrees` is the full vertical field of
/// view; pixels are square.
struct Camera {
  Vec3 eye;
  Vec3 target;
  Vec3 up{0.0, 0.0, 1.0};
  double vfov_degrees = 35.0;
  double near_depth = 0.1;
  double far_depth = 1000.0;

  bool operator==(const Camera&) const = default;
};

/// Describes the first violated camera invariant, if any.
std::optional<std::string> validate(const Camera& camera);

struct Material {
  Rgb8 base_color{255, 255, 255};
  double opacity = 1.0;
  double ambient = 0.25;
  double diffuse = 0.6;

  bool operator==(const Material&) const = default;
};

/// `direction` points from the light toward the scene.
struct DirectionalLight {
  Vec3 direction{0.0, 0.0, -1.0};
  double intensity = 1.0;

  bool operator==(const DirectionalLight&) const = default;
};

/// Row-major RGBA8 raster.
class ImageBuffer {
 public:
  ImageBuffer() = default;
  ImageBuffer(int width, int height, Rgb8 fill = {});

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  /// RGBA of pixel (x, y).
  std::array<std::uint8_t, 4> at(int x, int y) const;
  void set(int x, int y, std::array<std::uint8_t, 4> rgba);

  bool operator==(const ImageBuffer&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

/// Screen position of a projected point. y grows downward; `depth` is the
/// positive view-space distance along the viewing axis.
struct ScreenPoint {
  double x = 0.0;
  double y = 0.0;
  double depth = 0.0;
  /// True when the point is closer than the near plane (or behind the eye)
  /// and must be clipped before rasterization.
  bool clipped = false;
};

ScreenPoint project(const Camera& camera, int width, int height, const Vec3& point);

/// One mesh with its material. Triangles with opacity 1 go through the
/// z-buffered opaque pass; anything lower is blended in the transparent pass.
struct RenderItem {
  const TriangleMesh* mesh = nullptr;
  Material material;
};

/// Largest supported image, in pixels, and per-axis limit.
inline constexpr std::int64_t kMaxPixels = 64ll * 1024 * 1024;
inline constexpr int kMaxDimension = 16384;

struct RasterOptions {
  /// Worker threads for tile-parallel rendering. Output does not depend on it.
  int threads = 1;
  int tile_size = 64;
};

/// Per-pixel record of what the rasterizer did, for diagnostics and tests.
struct RenderTrace {
  int width = 0;
  int height = 0;
  /// Index into the scene of the visible opaque item, -1 for background.
  std::vector<std::int32_t> item;
  /// Lighting factor ambient + sum(diffuse * intensity * n.l) of that pixel.
  std::vector<double> shade;
  /// Number of transparent fragments blended over the pixel.
  std::vector<std::uint16_t> transparent_layers;
};

/// Renders the scene. Opaque triangles: back-face culled, z-buffered,
/// top-left fill rule, per-pixel Lambert + ambient from interpolated normals.
/// Transparent triangles: two-sided, sorted back to front by view-space
/// centroid depth, z-tested against the opaque depth but not writing it,
/// blended with src*a + dst*(1-a). Throws Error(kRender) for an invalid camera
/// or a resolution beyond kMaxPixels / kMaxDimension.
ImageBuffer rasterize(std::span<const RenderItem> scene, const Camera& camera,
                      std::span<const DirectionalLight> lights, Rgb8 background,
                      int width, int height, const RasterOptions& options = {},
                      RenderTrace* trace = nullptr);

/// Box filter: each output pixel averages a factor x factor block
/// (rounded half up). Width and height must be multiples of `factor`.
ImageBuffer downsample(const ImageBuffer& image, int factor);

}  // namespace brainpaint

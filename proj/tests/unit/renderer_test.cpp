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


#include "brainpaint/renderer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "brainpaint/error.hpp"
#include "oracles.hpp"

namespace brainpaint {
namespace {

using testing::oracle_scene_camera;

const std::vector<DirectionalLight> kLights = {
    {normalized(Vec3{0.3, 1.0, -0.4}), 0.9}, {normalized(Vec3{-0.5, 1.0, 0.6}), 0.35}};

/// Square of half-size `s` at distance `d` in front of the oracle camera,
/// counter-clockwise as seen from the eye.
TriangleMesh quad(double d, double s, bool facing = true) {
  TriangleMesh m;
  m.vertices = {{-s, d, -s}, {s, d, -s}, {s, d, s}, {-s, d, s}};
  m.normals.assign(4, Vec3{0, -1, 0});
  if (facing) {
    m.triangles = {{0, 1, 2}, {0, 2, 3}};
  } else {
    m.triangles = {{0, 2, 1}, {0, 3, 2}};
  }
  return m;
}

Material flat(Rgb8 color, double opacity) { return Material{color, opacity, 1.0, 0.0}; }

std::uint8_t half_up(double x) { return static_cast<std::uint8_t>(std::floor(x + 0.5)); }

TEST(Renderer, MatchesIndependentOracle) {
  constexpr int kW = 96, kH = 72;
  std::size_t compared = 0, covered = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    std::mt19937_64 rng(seed);
    const auto tris = testing::random_oracle_scene(rng, 24);
    const auto meshes = testing::to_meshes(tris);
    std::vector<RenderItem> items;
    for (std::size_t i = 0; i < meshes.size(); ++i) {
      items.push_back({&meshes[i], Material{tris[i].color, 1.0, tris[i].ambient, tris[i].diffuse}});
    }
    const Rgb8 bg{12, 34, 56};
    RenderTrace trace;
    const ImageBuffer img = rasterize(items, oracle_scene_camera(), kLights, bg, kW, kH, {}, &trace);
    const auto oracle = testing::oracle_render(tris, oracle_scene_camera(), kLights, bg, kW, kH);
    for (int y = 0; y < kH; ++y) {
      for (int x = 0; x < kW; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * kW + x;
        if (oracle.ambiguous[i]) continue;
        ++compared;
        covered += oracle.triangle[i] >= 0;
        const auto px = img.at(x, y);
        ASSERT_EQ(trace.item[i], oracle.triangle[i]) << "seed " << seed << " at " << x << "," << y;
        EXPECT_EQ(px[0], oracle.rgb[i][0]) << "seed " << seed << " at " << x << "," << y;
        EXPECT_EQ(px[1], oracle.rgb[i][1]);
        EXPECT_EQ(px[2], oracle.rgb[i][2]);
        EXPECT_EQ(px[3], 255);
      }
    }
  }
  EXPECT_GT(compared, 30u * kW * kH / 2);
  EXPECT_GT(covered, 5000u);
}

TEST(Renderer, ShadeTraceMatchesLightingFactor) {
  const TriangleMesh m = quad(4, 1);
  const RenderItem item{&m, Material{{200, 100, 50}, 1.0, 0.25, 0.6}};
  RenderTrace trace;
  const ImageBuffer img = rasterize({&item, 1}, oracle_scene_camera(), kLights, {}, 40, 40, {}, &trace);
  const double f = testing::oracle_light_factor({0, -1, 0}, 0.25, 0.6, kLights);
  const std::size_t c = 20 * 40 + 20;
  EXPECT_EQ(trace.item[c], 0);
  EXPECT_NEAR(trace.shade[c], f, 1e-12);
  EXPECT_EQ(img.at(20, 20)[0], half_up(std::min(255.0, 200 * f)));
  EXPECT_EQ(img.at(20, 20)[2], half_up(std::min(255.0, 50 * f)));
}

TEST(Renderer, BackFacesAreCulled) {
  const TriangleMesh m = quad(4, 1, false);
  const RenderItem item{&m, flat({255, 0, 0}, 1.0)};
  const ImageBuffer img = rasterize({&item, 1}, oracle_scene_camera(), {}, {1, 2, 3}, 32, 32);
  EXPECT_EQ(img, ImageBuffer(32, 32, {1, 2, 3}));
}

TEST(Renderer, GlassOverBlack) {
  const TriangleMesh m = quad(4, 1);
  const RenderItem item{&m, flat({255, 255, 255}, 0.12)};
  RenderTrace trace;
  const ImageBuffer img = rasterize({&item, 1}, oracle_scene_camera(), {}, {0, 0, 0}, 32, 32, {}, &trace);
  const auto px = img.at(16, 16);
  EXPECT_EQ(px[0], testing::oracle_over(255, 0, 0.12));
  EXPECT_EQ(px[0], 31);
  EXPECT_EQ(trace.transparent_layers[16 * 32 + 16], 1);
  EXPECT_EQ(img.at(0, 0)[0], 0);
}

TEST(Renderer, TransparentIsTwoSided) {
  const TriangleMesh m = quad(4, 1, false);
  const RenderItem item{&m, flat({255, 255, 255}, 0.5)};
  const ImageBuffer img = rasterize({&item, 1}, oracle_scene_camera(), {}, {0, 0, 0}, 32, 32);
  EXPECT_EQ(img.at(16, 16)[0], 128);
}

TEST(Renderer, LayersBlendBackToFrontRegardlessOfOrder) {
  const TriangleMesh near = quad(3, 1), mid = quad(4, 1.5), far = quad(5, 2);
  const Rgb8 bg{10, 20, 30};
  const RenderItem items[] = {{&mid, flat({0, 200, 0}, 0.25)},
                              {&far, flat({0, 0, 200}, 0.75)},
                              {&near, flat({200, 0, 0}, 0.5)}};
  RenderTrace trace;
  const ImageBuffer img = rasterize(items, oracle_scene_camera(), {}, bg, 33, 33, {}, &trace);
  double c[3] = {10, 20, 30};
  const double layers[3][4] = {{0, 0, 200, 0.75}, {0, 200, 0, 0.25}, {200, 0, 0, 0.5}};
  for (const auto& l : layers) {
    for (int k = 0; k < 3; ++k) c[k] = l[k] * l[3] + c[k] * (1 - l[3]);
  }
  const auto px = img.at(16, 16);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(px[k], half_up(c[k])) << k;
  EXPECT_EQ(trace.transparent_layers[16 * 33 + 16], 3);
  EXPECT_EQ(trace.item[16 * 33 + 16], -1);
}

TEST(Renderer, ZeroOpacityChangesNothing) {
  const TriangleMesh back = quad(5, 1.5), front = quad(3, 1);
  const RenderItem solid{&back, Material{{90, 160, 220}, 1.0, 0.25, 0.6}};
  const RenderItem with_ghost[] = {solid, {&front, flat({255, 0, 0}, 0.0)}};
  const ImageBuffer a = rasterize({&solid, 1}, oracle_scene_camera(), kLights, {5, 5, 5}, 48, 36);
  const ImageBuffer b = rasterize(with_ghost, oracle_scene_camera(), kLights, {5, 5, 5}, 48, 36);
  EXPECT_EQ(a, b);
}

TEST(Renderer, OpaqueOccludesTransparentBehindIt) {
  const TriangleMesh wall = quad(3, 2), glass = quad(5, 2);
  const RenderItem items[] = {{&glass, flat({255, 255, 255}, 0.5)}, {&wall, flat({40, 80, 120}, 1.0)}};
  RenderTrace trace;
  const ImageBuffer img = rasterize(items, oracle_scene_camera(), {}, {}, 32, 32, {}, &trace);
  EXPECT_EQ(img.at(16, 16)[0], 40);
  EXPECT_EQ(img.at(16, 16)[2], 120);
  EXPECT_EQ(trace.transparent_layers[16 * 32 + 16], 0);
}

TEST(Renderer, OutputIndependentOfThreadsAndTiles) {
  std::mt19937_64 rng(99);
  const auto tris = testing::random_oracle_scene(rng, 60);
  const auto meshes = testing::to_meshes(tris);
  const TriangleMesh glass = quad(4, 1.5);
  std::vector<RenderItem> items;
  for (std::size_t i = 0; i < meshes.size(); ++i) items.push_back({&meshes[i], Material{tris[i].color}});
  items.push_back({&glass, flat({255, 255, 255}, 0.3)});
  RenderTrace t1, t2;
  const ImageBuffer a = rasterize(items, oracle_scene_camera(), kLights, {}, 200, 150, {1, 64}, &t1);
  const ImageBuffer b = rasterize(items, oracle_scene_camera(), kLights, {}, 200, 150, {4, 16}, &t2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(t1.item, t2.item);
  EXPECT_EQ(t1.shade, t2.shade);
  EXPECT_EQ(t1.transparent_layers, t2.transparent_layers);
}

TEST(Renderer, TriangleCrossingNearPlaneIsClipped) {
  TriangleMesh m;
  m.vertices = {{-1, -1, -0.5}, {1, 3, -0.5}, {0, 3, 1}};
  m.normals.assign(3, normalized(cross(m.vertices[1] - m.vertices[0], m.vertices[2] - m.vertices[0])));
  m.triangles = {{0, 1, 2}};
  if (dot(m.normals[0], Vec3{0, 0, 0} - m.vertices[0]) < 0) m.triangles = {{0, 2, 1}};
  const RenderItem item{&m, flat({255, 255, 255}, 1.0)};
  const ImageBuffer img = rasterize({&item, 1}, oracle_scene_camera(), {}, {}, 64, 64);
  int lit = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) lit += img.at(x, y)[0] == 255;
  }
  EXPECT_GT(lit, 0);
}

TEST(Renderer, RejectsBadResolutionAndCamera) {
  const TriangleMesh m = quad(4, 1);
  const RenderItem item{&m, Material{}};
  const Camera cam = oracle_scene_camera();
  auto kind_of = [&](const Camera& c, int w, int h) {
    try {
      rasterize({&item, 1}, c, {}, {}, w, h);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::kIo;
  };
  EXPECT_EQ(kind_of(cam, 0, 10), ErrorKind::kRender);
  EXPECT_EQ(kind_of(cam, 10, -1), ErrorKind::kRender);
  EXPECT_EQ(kind_of(cam, kMaxDimension + 1, 1), ErrorKind::kRender);
  EXPECT_EQ(kind_of(cam, kMaxDimension, kMaxDimension), ErrorKind::kRender);
  Camera bad = cam;
  bad.target = bad.eye;
  EXPECT_EQ(kind_of(bad, 8, 8), ErrorKind::kRender);
  EXPECT_TRUE(validate(bad).has_value());
  EXPECT_FALSE(validate(cam).has_value());
}

TEST(Renderer, ProjectCentreAndClipping) {
  const Camera cam = oracle_scene_camera();
  const ScreenPoint c = project(cam, 100, 80, {0, 7, 0});
  EXPECT_NEAR(c.x, 50.0, 1e-9);
  EXPECT_NEAR(c.y, 40.0, 1e-9);
  EXPECT_NEAR(c.depth, 7.0, 1e-12);
  EXPECT_FALSE(c.clipped);
  const ScreenPoint up = project(cam, 100, 80, {0, 1, std::tan(M_PI / 6)});
  EXPECT_NEAR(up.y, 0.0, 1e-9);
  EXPECT_TRUE(project(cam, 100, 80, {0, -1, 0}).clipped);
  EXPECT_TRUE(project(cam, 100, 80, {0, 0.05, 0}).clipped);
}

TEST(Downsample, AveragesBlocksHalfUp) {
  ImageBuffer img(4, 2, {0, 0, 0});
  img.set(0, 0, {1, 0, 3, 255});
  img.set(1, 0, {1, 0, 3, 255});
  img.set(2, 0, {255, 255, 255, 255});
  const ImageBuffer out = downsample(img, 2);
  ASSERT_EQ(out.width(), 2);
  ASSERT_EQ(out.height(), 1);
  EXPECT_EQ(out.at(0, 0)[0], 1);  // 2 / 4 = 0.5
  EXPECT_EQ(out.at(0, 0)[2], 2);  // 6 / 4 = 1.5
  EXPECT_EQ(out.at(1, 0)[0], 64);  // 255 / 4 = 63.75
  EXPECT_EQ(downsample(img, 1), img);
  EXPECT_THROW(downsample(img, 3), Error);
}

}  // namespace
}  // namespace brainpaint

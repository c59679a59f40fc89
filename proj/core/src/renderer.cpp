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

#include <algorithm>
#include <atomic>
#include <limits>
#include <numbers>
#include <thread>

#include "brainpaint/error.hpp"
#include "brainpaint/gradient.hpp"

namespace brainpaint {

namespace {

// Screen coordinates are snapped to 1/256 pixel before edge evaluation.
constexpr int kSubpixelBits = 8;
constexpr std::int64_t kSubpixel = 1 << kSubpixelBits;
// Clip polygons to a band this many viewport sizes beyond each image edge.
constexpr double kGuardBand = 4.0;

struct ViewBasis {
  Vec3 eye;
  Vec3 right;
  Vec3 up;
  Vec3 forward;
  double focal = 1.0;  // pixels per unit of x/z
  double half_w = 0.0;
  double half_h = 0.0;

  Vec3 to_view(const Vec3& p) const {
    const Vec3 d = p - eye;
    return {dot(d, right), dot(d, up), dot(d, forward)};
  }
};

ViewBasis make_basis(const Camera& camera, int width, int height) {
  ViewBasis b;
  b.eye = camera.eye;
  b.forward = normalized(camera.target - camera.eye);
  b.right = normalized(cross(b.forward, camera.up));
  b.up = cross(b.right, b.forward);
  b.half_w = width * 0.5;
  b.half_h = height * 0.5;
  const double half_angle = camera.vfov_degrees * std::numbers::pi / 360.0;
  b.focal = b.half_h / std::tan(half_angle);
  return b;
}

struct ClipVertex {
  Vec3 view;
  Vec3 normal;
};

// Inside when value >= 0; value = a*x + b*y + c*z + d.
struct ClipPlane {
  double a, b, c, d;
  double eval(const Vec3& v) const { return a * v.x + b * v.y + c * v.z + d; }
};

std::vector<ClipVertex> clip_polygon(std::vector<ClipVertex> poly, const ClipPlane& plane) {
  std::vector<ClipVertex> out;
  out.reserve(poly.size() + 2);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const ClipVertex& cur = poly[i];
    const ClipVertex& nxt = poly[(i + 1) % poly.size()];
    const double dc = plane.eval(cur.view);
    const double dn = plane.eval(nxt.view);
    if (dc >= 0.0) out.push_back(cur);
    if ((dc >= 0.0) != (dn >= 0.0)) {
      const double t = dc / (dc - dn);
      out.push_back({cur.view + (nxt.view - cur.view) * t,
                     cur.normal + (nxt.normal - cur.normal) * t});
    }
  }
  return out;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// A screen-space triangle ready for coverage tests. Vertices are ordered so
// that the edge functions are positive inside.
struct SetupTriangle {
  std::int64_t x[3];
  std::int64_t y[3];
  std::int64_t area;       // twice the signed area, > 0
  std::int64_t bias[3];    // 0 for top-left edges, -1 otherwise; edge k is opposite vertex k
  double inv_depth[3];
  Vec3 normal[3];
  int min_px, max_px, min_py, max_py;
  std::int32_t item;
  bool flip_normal;
  double sort_depth;
};

// Edge function of a->b evaluated at p.
inline std::int64_t edge(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by,
                         std::int64_t px, std::int64_t py) {
  return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

inline bool is_top_left(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
  const std::int64_t dx = bx - ax;
  const std::int64_t dy = by - ay;
  return (dy == 0 && dx > 0) || dy < 0;
}

struct Fragment {
  double w[3];  // perspective-corrected barycentrics, sum to 1
  double depth;
};

// Coverage and depth of pixel (px, py); false when not covered.
inline bool sample(const SetupTriangle& t, int px, int py, Fragment& f) {
  const std::int64_t cx = static_cast<std::int64_t>(px) * kSubpixel + kSubpixel / 2;
  const std::int64_t cy = static_cast<std::int64_t>(py) * kSubpixel + kSubpixel / 2;
  const std::int64_t e0 = edge(t.x[1], t.y[1], t.x[2], t.y[2], cx, cy);
  if (e0 + t.bias[0] < 0) return false;
  const std::int64_t e1 = edge(t.x[2], t.y[2], t.x[0], t.y[0], cx, cy);
  if (e1 + t.bias[1] < 0) return false;
  const std::int64_t e2 = edge(t.x[0], t.y[0], t.x[1], t.y[1], cx, cy);
  if (e2 + t.bias[2] < 0) return false;
  const double inv_area = 1.0 / static_cast<double>(t.area);
  const double w0 = static_cast<double>(e0) * inv_area * t.inv_depth[0];
  const double w1 = static_cast<double>(e1) * inv_area * t.inv_depth[1];
  const double w2 = static_cast<double>(e2) * inv_area * t.inv_depth[2];
  const double inv_depth = w0 + w1 + w2;
  if (!(inv_depth > 0.0)) return false;
  f.depth = 1.0 / inv_depth;
  f.w[0] = w0 * f.depth;
  f.w[1] = w1 * f.depth;
  f.w[2] = w2 * f.depth;
  return true;
}

double light_factor(const Material& m, const Vec3& n,
                    std::span<const DirectionalLight> lights) {
  double factor = m.ambient;
  for (const DirectionalLight& light : lights) {
    factor += m.diffuse * light.intensity * std::max(0.0, -dot(n, light.direction));
  }
  return factor;
}

struct Setup {
  std::vector<SetupTriangle> opaque;
  std::vector<SetupTriangle> transparent;  // back to front
};

class TriangleSetup {
 public:
  TriangleSetup(const Camera& camera, int width, int height)
      : basis_(make_basis(camera, width, height)),
        camera_(camera),
        width_(width),
        height_(height) {
    const double gw = basis_.half_w + kGuardBand * width;
    const double gh = basis_.half_h + kGuardBand * height;
    near_ = {0, 0, 1, -camera.near_depth};
    guard_ = {ClipPlane{basis_.focal, 0, gw, 0}, ClipPlane{-basis_.focal, 0, gw, 0},
              ClipPlane{0, basis_.focal, gh, 0}, ClipPlane{0, -basis_.focal, gh, 0}};
    view_ = {ClipPlane{basis_.focal, 0, basis_.half_w, 0},
             ClipPlane{-basis_.focal, 0, basis_.half_w, 0},
             ClipPlane{0, basis_.focal, basis_.half_h, 0},
             ClipPlane{0, -basis_.focal, basis_.half_h, 0}};
  }

  Setup run(std::span<const RenderItem> scene) const {
    Setup setup;
    for (std::size_t item = 0; item < scene.size(); ++item) {
      const RenderItem& ri = scene[item];
      if (ri.mesh == nullptr) continue;
      const bool opaque = ri.material.opacity >= 1.0;
      std::vector<Vec3> view(ri.mesh->vertices.size());
      for (std::size_t i = 0; i < view.size(); ++i) view[i] = basis_.to_view(ri.mesh->vertices[i]);
      for (const Triangle& tri : ri.mesh->triangles) {
        const ClipVertex v[3] = {{view[tri[0]], ri.mesh->normals[tri[0]]},
                                 {view[tri[1]], ri.mesh->normals[tri[1]]},
                                 {view[tri[2]], ri.mesh->normals[tri[2]]}};
        const double centroid_depth = (v[0].view.z + v[1].view.z + v[2].view.z) / 3.0;
        add_triangle(v, static_cast<std::int32_t>(item), opaque, centroid_depth,
                     opaque ? setup.opaque : setup.transparent);
      }
    }
    std::stable_sort(setup.transparent.begin(), setup.transparent.end(),
                     [](const SetupTriangle& a, const SetupTriangle& b) {
                       return a.sort_depth > b.sort_depth;
                     });
    return setup;
  }

 private:
  void add_triangle(const ClipVertex (&v)[3], std::int32_t item, bool opaque,
                    double centroid_depth, std::vector<SetupTriangle>& out) const {
    // Trivial rejection against the view frustum.
    auto all_outside = [&](const ClipPlane& p) {
      return p.eval(v[0].view) < 0 && p.eval(v[1].view) < 0 && p.eval(v[2].view) < 0;
    };
    if (all_outside(near_)) return;
    for (const ClipPlane& p : view_) {
      if (all_outside(p)) return;
    }
    if (v[0].view.z > camera_.far_depth && v[1].view.z > camera_.far_depth &&
        v[2].view.z > camera_.far_depth) {
      return;
    }

    std::vector<ClipVertex> poly(v, v + 3);
    auto needs_clip = [&](const ClipPlane& p) {
      return p.eval(v[0].view) < 0 || p.eval(v[1].view) < 0 || p.eval(v[2].view) < 0;
    };
    if (needs_clip(near_)) poly = clip_polygon(std::move(poly), near_);
    for (const ClipPlane& p : guard_) {
      if (poly.size() < 3) return;
      if (needs_clip(p)) poly = clip_polygon(std::move(poly), p);
    }
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      emit(poly[0], poly[i], poly[i + 1], item, opaque, centroid_depth, out);
    }
  }

  void emit(const ClipVertex& a, const ClipVertex& b, const ClipVertex& c, std::int32_t item,
            bool opaque, double centroid_depth, std::vector<SetupTriangle>& out) const {
    SetupTriangle t{};
    const ClipVertex* src[3] = {&a, &b, &c};
    for (int i = 0; i < 3; ++i) {
      const Vec3& p = src[i]->view;
      const double sx = basis_.half_w + basis_.focal * p.x / p.z;
      const double sy = basis_.half_h - basis_.focal * p.y / p.z;
      t.x[i] = std::llround(sx * kSubpixel);
      t.y[i] = std::llround(sy * kSubpixel);
      t.inv_depth[i] = 1.0 / p.z;
      t.normal[i] = src[i]->normal;
    }
    std::int64_t area = edge(t.x[0], t.y[0], t.x[1], t.y[1], t.x[2], t.y[2]);
    if (area == 0) return;
    // y grows downward, so front faces (counter-clockwise from the eye) have
    // negative area here. Reorder them to make the edge functions positive.
    t.flip_normal = area > 0;
    if (t.flip_normal && opaque) return;
    if (area < 0) {
      std::swap(t.x[1], t.x[2]);
      std::swap(t.y[1], t.y[2]);
      std::swap(t.inv_depth[1], t.inv_depth[2]);
      std::swap(t.normal[1], t.normal[2]);
      area = -area;
    }
    t.area = area;
    for (int k = 0; k < 3; ++k) {
      const int a0 = (k + 1) % 3;
      const int b0 = (k + 2) % 3;
      t.bias[k] = is_top_left(t.x[a0], t.y[a0], t.x[b0], t.y[b0]) ? 0 : -1;
    }
    const std::int64_t min_x = std::min({t.x[0], t.x[1], t.x[2]});
    const std::int64_t max_x = std::max({t.x[0], t.x[1], t.x[2]});
    const std::int64_t min_y = std::min({t.y[0], t.y[1], t.y[2]});
    const std::int64_t max_y = std::max({t.y[0], t.y[1], t.y[2]});
    t.min_px = static_cast<int>(std::max<std::int64_t>(0, ceil_div(min_x - kSubpixel / 2, kSubpixel)));
    t.max_px = static_cast<int>(
        std::min<std::int64_t>(width_ - 1, floor_div(max_x - kSubpixel / 2, kSubpixel)));
    t.min_py = static_cast<int>(std::max<std::int64_t>(0, ceil_div(min_y - kSubpixel / 2, kSubpixel)));
    t.max_py = static_cast<int>(
        std::min<std::int64_t>(height_ - 1, floor_div(max_y - kSubpixel / 2, kSubpixel)));
    if (t.min_px > t.max_px || t.min_py > t.max_py) return;
    t.item = item;
    t.sort_depth = centroid_depth;
    out.push_back(t);
  }

  ViewBasis basis_;
  Camera camera_;
  int width_;
  int height_;
  ClipPlane near_{};
  std::array<ClipPlane, 4> guard_{};
  std::array<ClipPlane, 4> view_{};
};

struct TileRect {
  int x0, y0, x1, y1;  // half-open
};

std::vector<std::vector<std::uint32_t>> bin_triangles(const std::vector<SetupTriangle>& tris,
                                                      int tiles_x, int tiles_y, int tile) {
  std::vector<std::vector<std::uint32_t>> bins(static_cast<std::size_t>(tiles_x) * tiles_y);
  for (std::uint32_t i = 0; i < tris.size(); ++i) {
    const SetupTriangle& t = tris[i];
    for (int ty = t.min_py / tile; ty <= t.max_py / tile; ++ty) {
      for (int tx = t.min_px / tile; tx <= t.max_px / tile; ++tx) {
        bins[static_cast<std::size_t>(ty) * tiles_x + tx].push_back(i);
      }
    }
  }
  return bins;
}

class TileRenderer {
 public:
  TileRenderer(std::span<const RenderItem> scene, std::span<const DirectionalLight> lights,
               Rgb8 background, const Setup& setup, ImageBuffer& image, RenderTrace* trace)
      : scene_(scene),
        lights_(lights),
        background_(background),
        setup_(setup),
        image_(image),
        trace_(trace) {}

  void render(const TileRect& rect, const std::vector<std::uint32_t>& opaque_bin,
              const std::vector<std::uint32_t>& transparent_bin) const {
    const int w = rect.x1 - rect.x0;
    const int h = rect.y1 - rect.y0;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    std::vector<double> depth(n, std::numeric_limits<double>::infinity());
    std::vector<std::int32_t> winner(n, -1);
    std::vector<Fragment> frag(n);

    for (std::uint32_t idx : opaque_bin) {
      const SetupTriangle& t = setup_.opaque[idx];
      const int x0 = std::max(t.min_px, rect.x0), x1 = std::min(t.max_px, rect.x1 - 1);
      const int y0 = std::max(t.min_py, rect.y0), y1 = std::min(t.max_py, rect.y1 - 1);
      for (int py = y0; py <= y1; ++py) {
        for (int px = x0; px <= x1; ++px) {
          Fragment f;
          if (!sample(t, px, py, f)) continue;
          const std::size_t i = static_cast<std::size_t>(py - rect.y0) * w + (px - rect.x0);
          if (f.depth < depth[i]) {
            depth[i] = f.depth;
            winner[i] = static_cast<std::int32_t>(idx);
            frag[i] = f;
          }
        }
      }
    }

    std::vector<std::array<double, 3>> color(n, {double(background_.r), double(background_.g),
                                                 double(background_.b)});
    std::vector<double> shade(n, 0.0);
    std::vector<std::uint16_t> layers(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (winner[i] < 0) continue;
      const SetupTriangle& t = setup_.opaque[winner[i]];
      const Material& m = scene_[t.item].material;
      const Vec3 normal = interpolate_normal(t, frag[i]);
      shade[i] = light_factor(m, normal, lights_);
      color[i] = shaded(m, shade[i]);
    }

    for (std::uint32_t idx : transparent_bin) {
      const SetupTriangle& t = setup_.transparent[idx];
      const Material& m = scene_[t.item].material;
      const double alpha = std::clamp(m.opacity, 0.0, 1.0);
      const int x0 = std::max(t.min_px, rect.x0), x1 = std::min(t.max_px, rect.x1 - 1);
      const int y0 = std::max(t.min_py, rect.y0), y1 = std::min(t.max_py, rect.y1 - 1);
      for (int py = y0; py <= y1; ++py) {
        for (int px = x0; px <= x1; ++px) {
          Fragment f;
          if (!sample(t, px, py, f)) continue;
          const std::size_t i = static_cast<std::size_t>(py - rect.y0) * w + (px - rect.x0);
          if (!(f.depth < depth[i])) continue;
          const auto src = shaded(m, light_factor(m, interpolate_normal(t, f), lights_));
          for (int c = 0; c < 3; ++c) color[i][c] = src[c] * alpha + color[i][c] * (1.0 - alpha);
          if (layers[i] < std::numeric_limits<std::uint16_t>::max()) ++layers[i];
        }
      }
    }

    for (int py = rect.y0; py < rect.y1; ++py) {
      for (int px = rect.x0; px < rect.x1; ++px) {
        const std::size_t i = static_cast<std::size_t>(py - rect.y0) * w + (px - rect.x0);
        image_.set(px, py, {round_channel(color[i][0]), round_channel(color[i][1]),
                            round_channel(color[i][2]), 255});
        if (trace_) {
          const std::size_t g = static_cast<std::size_t>(py) * trace_->width + px;
          trace_->item[g] = winner[i] < 0 ? -1 : setup_.opaque[winner[i]].item;
          trace_->shade[g] = shade[i];
          trace_->transparent_layers[g] = layers[i];
        }
      }
    }
  }

 private:
  static Vec3 interpolate_normal(const SetupTriangle& t, const Fragment& f) {
    Vec3 n = t.normal[0] * f.w[0] + t.normal[1] * f.w[1] + t.normal[2] * f.w[2];
    n = normalized(n);
    return t.flip_normal ? -n : n;
  }

  static std::array<double, 3> shaded(const Material& m, double factor) {
    return {std::min(255.0, m.base_color.r * factor), std::min(255.0, m.base_color.g * factor),
            std::min(255.0, m.base_color.b * factor)};
  }

  std::span<const RenderItem> scene_;
  std::span<const DirectionalLight> lights_;
  Rgb8 background_;
  const Setup& setup_;
  ImageBuffer& image_;
  RenderTrace* trace_;
};

}  // namespace

std::optional<std::string> validate(const Camera& camera) {
  const Vec3 view = camera.target - camera.eye;
  if (!(length(view) > 0.0)) return "camera eye equals target";
  if (!(length(cross(normalized(view), normalized(camera.up))) > 1e-9)) {
    return "camera up vector is parallel to the view direction";
  }
  if (!(camera.vfov_degrees > 0.0 && camera.vfov_degrees < 180.0)) {
    return "vertical field of view must be in (0, 180) degrees";
  }
  if (!(camera.near_depth > 0.0 && camera.near_depth < camera.far_depth)) {
    return "need 0 < near < far";
  }
  return std::nullopt;
}

ImageBuffer::ImageBuffer(int width, int height, Rgb8 fill)
    : width_(width), height_(height),
      pixels_(static_cast<std::size_t>(width) * height * 4) {
  for (std::size_t i = 0; i < pixels_.size(); i += 4) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
    pixels_[i + 3] = 255;
  }
}

std::array<std::uint8_t, 4> ImageBuffer::at(int x, int y) const {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 4;
  return {pixels_[i], pixels_[i + 1], pixels_[i + 2], pixels_[i + 3]};
}

void ImageBuffer::set(int x, int y, std::array<std::uint8_t, 4> rgba) {
  const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 4;
  std::copy(rgba.begin(), rgba.end(), pixels_.begin() + static_cast<std::ptrdiff_t>(i));
}

ScreenPoint project(const Camera& camera, int width, int height, const Vec3& point) {
  const ViewBasis basis = make_basis(camera, width, height);
  const Vec3 v = basis.to_view(point);
  ScreenPoint s;
  s.depth = v.z;
  s.clipped = !(v.z >= camera.near_depth);
  if (v.z != 0.0) {
    s.x = basis.half_w + basis.focal * v.x / v.z;
    s.y = basis.half_h - basis.focal * v.y / v.z;
  }
  return s;
}

ImageBuffer rasterize(std::span<const RenderItem> scene, const Camera& camera,
                      std::span<const DirectionalLight> lights, Rgb8 background, int width,
                      int height, const RasterOptions& options, RenderTrace* trace) {
  if (width <= 0 || height <= 0 || width > kMaxDimension || height > kMaxDimension ||
      static_cast<std::int64_t>(width) * height > kMaxPixels) {
    throw Error(ErrorKind::kRender, "resolution_limit",
                "resolution " + std::to_string(width) + "x" + std::to_string(height) +
                    " is outside the supported range (each side 1.." +
                    std::to_string(kMaxDimension) + ", at most " + std::to_string(kMaxPixels) +
                    " pixels)");
  }
  if (auto problem = validate(camera)) {
    throw Error(ErrorKind::kRender, "invalid_camera", *problem);
  }

  ImageBuffer image(width, height, background);
  if (trace) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    trace->width = width;
    trace->height = height;
    trace->item.assign(n, -1);
    trace->shade.assign(n, 0.0);
    trace->transparent_layers.assign(n, 0);
  }

  const Setup setup = TriangleSetup(camera, width, height).run(scene);
  const int tile = std::max(8, options.tile_size);
  const int tiles_x = (width + tile - 1) / tile;
  const int tiles_y = (height + tile - 1) / tile;
  const auto opaque_bins = bin_triangles(setup.opaque, tiles_x, tiles_y, tile);
  const auto transparent_bins = bin_triangles(setup.transparent, tiles_x, tiles_y, tile);
  const TileRenderer renderer(scene, lights, background, setup, image, trace);

  const int tile_count = tiles_x * tiles_y;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next.fetch_add(1); t < tile_count; t = next.fetch_add(1)) {
      const int tx = t % tiles_x;
      const int ty = t / tiles_x;
      const TileRect rect{tx * tile, ty * tile, std::min(width, (tx + 1) * tile),
                          std::min(height, (ty + 1) * tile)};
      renderer.render(rect, opaque_bins[t], transparent_bins[t]);
    }
  };
  const int threads = std::clamp(options.threads, 1, std::max(1, tile_count));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return image;
}

ImageBuffer downsample(const ImageBuffer& image, int factor) {
  if (factor <= 1) return image;
  if (image.width() % factor != 0 || image.height() % factor != 0) {
    throw Error(ErrorKind::kRender, "bad_downsample",
                "image size is not a multiple of the downsample factor");
  }
  ImageBuffer out(image.width() / factor, image.height() / factor);
  const int n = factor * factor;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      int sum[4] = {0, 0, 0, 0};
      for (int dy = 0; dy < factor; ++dy) {
        for (int dx = 0; dx < factor; ++dx) {
          const auto p = image.at(x * factor + dx, y * factor + dy);
          for (int c = 0; c < 4; ++c) sum[c] += p[c];
        }
      }
      std::array<std::uint8_t, 4> avg;
      for (int c = 0; c < 4; ++c) avg[c] = static_cast<std::uint8_t>((sum[c] + n / 2) / n);
      out.set(x, y, avg);
    }
  }
  return out;
}

}  // namespace brainpaint

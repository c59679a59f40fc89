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


#include "brainpaint/config.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "brainpaint/error.hpp"
#include "brainpaint/renderer.hpp"
#include "text_util.hpp"

namespace brainpaint {

namespace {

using nlohmann::json;

const std::vector<std::string> kKeys = {
    "atlas",      "surface",       "gradient",    "background",
    "resolution", "views",         "exclude",     "glass_opacity",
    "animation",  "asset_root",    "output_dir",  "supersample",
    "region_mapping", "include_right_hemisphere", "vfov"};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorKind::kConfig, "invalid_config", path + ": " + message);
}

std::string type_name(const json& j) { return j.type_name(); }

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string, got " + type_name(j));
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number, got " + type_name(j));
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer, got " + type_name(j));
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    fail(path, "integer out of range");
  }
  return static_cast<int>(v);
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false, got " + type_name(j));
  return j.get<bool>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array, got " + type_name(j));
  return j;
}

Rgb8 as_color(const json& j, const std::string& path) {
  const std::string text = as_string(j, path);
  try {
    return parse_color(text);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::filesystem::path as_path(const json& j, const std::string& path,
                              const std::filesystem::path& base_dir) {
  std::filesystem::path p = as_string(j, path);
  if (p.empty()) fail(path, "path must not be empty");
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p;
}

AnimationConfig parse_animation(const json& j) {
  if (!j.is_object()) fail("animation", "expected an object, got " + type_name(j));
  AnimationConfig a;
  for (const auto& [key, value] : j.items()) {
    const std::string path = "animation." + key;
    if (key == "frames_per_transition") {
      a.frames_per_transition = as_int(value, path);
      if (a.frames_per_transition < 1) fail(path, "must be at least 1");
    } else if (key == "fps") {
      a.fps = as_number(value, path);
      if (!(a.fps > 0.0) || !std::isfinite(a.fps)) fail(path, "must be positive");
    } else {
      fail(path, "unknown key");
    }
  }
  return a;
}

}  // namespace

SceneOptions RunConfig::scene_options() const {
  SceneOptions o;
  o.exclude = exclude;
  o.include_right_hemisphere = include_right_hemisphere;
  o.glass_opacity = glass_opacity;
  o.vfov_degrees = vfov_degrees;
  o.background = background;
  return o;
}

RenderSettings RunConfig::render_settings() const {
  RenderSettings s;
  s.width = width;
  s.height = height;
  s.supersample = supersample;
  return s;
}

std::vector<std::string> config_keys() { return kKeys; }

RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kConfig, "invalid_json",
                std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("(root)", "expected an object, got " + type_name(doc));

  RunConfig c;
  bool saw_asset_root = false;
  bool saw_output_dir = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "atlas") {
      c.atlas = as_string(value, key);
      if (c.atlas.empty()) fail(key, "must not be empty");
    } else if (key == "surface") {
      try {
        c.surface = parse_surface(as_string(value, key));
      } catch (const Error& e) {
        fail(key, e.what());
      }
    } else if (key == "gradient") {
      std::vector<Rgb8> colors;
      std::size_t i = 0;
      for (const json& item : as_array(value, key)) {
        colors.push_back(as_color(item, key + "[" + std::to_string(i++) + "]"));
      }
      c.gradient = make_gradient(colors);
      if (auto problem = validate(c.gradient)) fail(key, problem->message);
    } else if (key == "background") {
      c.background = as_color(value, key);
    } else if (key == "resolution") {
      if (!value.is_array() || value.size() != 2) fail(key, "expected [width, height]");
      c.width = as_int(value[0], "resolution[0]");
      c.height = as_int(value[1], "resolution[1]");
    } else if (key == "views") {
      c.views.clear();
      std::size_t i = 0;
      for (const json& item : as_array(value, key)) {
        const std::string path = key + "[" + std::to_string(i++) + "]";
        try {
          c.views.push_back(parse_view_preset(as_string(item, path)));
        } catch (const Error& e) {
          if (e.code() == "invalid_config") throw;
          fail(path, e.what());
        }
      }
      if (c.views.empty()) fail(key, "at least one view is required");
      for (std::size_t a = 0; a < c.views.size(); ++a) {
        for (std::size_t b = a + 1; b < c.views.size(); ++b) {
          if (c.views[a] == c.views[b]) {
            fail(key, std::string("view ") + to_string(c.views[a]) + " listed twice");
          }
        }
      }
    } else if (key == "exclude") {
      c.exclude.clear();
      std::size_t i = 0;
      for (const json& item : as_array(value, key)) {
        c.exclude.push_back(as_string(item, key + "[" + std::to_string(i++) + "]"));
      }
    } else if (key == "glass_opacity") {
      c.glass_opacity = as_number(value, key);
      if (!(c.glass_opacity >= 0.0 && c.glass_opacity <= 1.0)) fail(key, "must be in [0, 1]");
    } else if (key == "animation") {
      if (!value.is_null()) c.animation = parse_animation(value);
    } else if (key == "asset_root") {
      c.asset_root = as_path(value, key, base_dir);
      saw_asset_root = true;
    } else if (key == "output_dir") {
      c.output_dir = as_path(value, key, base_dir);
      saw_output_dir = true;
    } else if (key == "supersample") {
      c.supersample = as_int(value, key);
      if (c.supersample < 1 || c.supersample > 8) fail(key, "must be between 1 and 8");
    } else if (key == "region_mapping") {
      if (!value.is_object()) fail(key, "expected an object, got " + type_name(value));
      for (const auto& [from, to] : value.items()) {
        c.region_mapping[from] = as_string(to, key + "." + from);
      }
    } else if (key == "include_right_hemisphere") {
      c.include_right_hemisphere = as_bool(value, key);
    } else if (key == "vfov") {
      c.vfov_degrees = as_number(value, key);
      if (!(c.vfov_degrees > 0.0 && c.vfov_degrees < 180.0)) fail(key, "must be in (0, 180)");
    } else {
      throw Error(ErrorKind::kConfig, "unknown_key", "unknown key '" + key + "'");
    }
  }
  if (!base_dir.empty()) {
    if (!saw_asset_root) c.asset_root = base_dir / c.asset_root;
    if (!saw_output_dir) c.output_dir = base_dir / c.output_dir;
  }

  if (c.width < 1 || c.height < 1) fail("resolution", "width and height must be positive");
  const std::int64_t w = static_cast<std::int64_t>(c.width) * c.supersample;
  const std::int64_t h = static_cast<std::int64_t>(c.height) * c.supersample;
  if (w > kMaxDimension || h > kMaxDimension) {
    fail("resolution", "width and height times supersample must not exceed " +
                           std::to_string(kMaxDimension));
  }
  if (w * h > kMaxPixels) {
    fail("resolution", "rendered pixel count exceeds " + std::to_string(kMaxPixels));
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = detail::read_file(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, "config_unreadable", e.what());
  }
  return parse_config(text, path.parent_path().empty() ? std::filesystem::path(".")
                                                       : path.parent_path());
}

std::string config_to_json(const RunConfig& c) {
  json gradient = json::array();
  for (const ControlColor& cc : c.gradient.controls) {
    gradient.push_back(to_hex(Rgb8{static_cast<std::uint8_t>(cc.r), static_cast<std::uint8_t>(cc.g),
                                   static_cast<std::uint8_t>(cc.b)}));
  }
  json views = json::array();
  for (ViewPreset v : c.views) views.push_back(to_string(v));
  json mapping = json::object();
  for (const auto& [from, to] : c.region_mapping) mapping[from] = to;
  json doc = {{"atlas", c.atlas},
              {"surface", to_string(c.surface)},
              {"gradient", gradient},
              {"background", to_hex(c.background)},
              {"resolution", {c.width, c.height}},
              {"views", views},
              {"exclude", c.exclude},
              {"glass_opacity", c.glass_opacity},
              {"asset_root", c.asset_root.generic_string()},
              {"output_dir", c.output_dir.generic_string()},
              {"supersample", c.supersample},
              {"region_mapping", mapping},
              {"include_right_hemisphere", c.include_right_hemisphere},
              {"vfov", c.vfov_degrees}};
  doc["animation"] = c.animation ? json{{"frames_per_transition", c.animation->frames_per_transition},
                                        {"fps", c.animation->fps}}
                                 : json(nullptr);
  return doc.dump(2) + "\n";
}

}  // namespace brainpaint

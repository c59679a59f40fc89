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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brainpaint/atlas.hpp"
#include "brainpaint/color.hpp"
#include "brainpaint/gradient.hpp"
#include "brainpaint/scene.hpp"

namespace brainpaint {

struct AnimationConfig {
  int frames_per_transition = 10;
  double fps = 24.0;

  bool operator==(const AnimationConfig&) const = default;
};

/// One run of the pipeline. Every field has a default, so "{}" is a valid
/// configuration document.
struct RunConfig {
  std::string atlas = "desikan_killiany";
  Surface surface = Surface::kPial;
  GradientSpec gradient = default_gradient();
  Rgb8 background{0, 0, 0};
  int width = 1200;
  int height = 900;
  std::vector<ViewPreset> views = default_views();
  std::vector<std::string> exclude;
  double glass_opacity = kDefaultGlassOpacity;
  std::optional<AnimationConfig> animation;
  std::filesystem::path asset_root = "assets";
  std::filesystem::path output_dir = "out";
  int supersample = 1;
  /// Extra CSV header names: custom name -> atlas region.
  std::map<std::string, std::string> region_mapping;
  bool include_right_hemisphere = false;
  double vfov_degrees = kDefaultVfovDegrees;

  SceneOptions scene_options() const;
  RenderSettings render_settings() const;

  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON configuration document. Relative asset_root and output_dir
/// are resolved against `base_dir` when it is not empty. Unknown keys and
/// invalid values throw Error(kConfig) naming the key path, e.g.
/// "gradient[2]: invalid color 'chartreuse'".
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

/// Reads and parses a file; relative paths resolve against its directory.
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON for a config, with every key present. parse_config of the
/// result gives back an equal RunConfig.
std::string config_to_json(const RunConfig& config);

/// Keys accepted at the top level of a configuration document.
std::vector<std::string> config_keys();

}  // namespace brainpaint

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

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "brainpaint/animation.hpp"
#include "brainpaint/config.hpp"
#include "brainpaint/ingest.hpp"

namespace brainpaint {

struct OutputImage {
  std::string file;
  std::string image_name;
  /// 0-based data row (the CSV line after the header is row 0).
  std::size_t row = 0;
  ViewPreset view = ViewPreset::kCorticalFront;
  std::string sha256;

  bool operator==(const OutputImage&) const = default;
};

struct RunManifest {
  /// config_to_json of the effective configuration.
  std::string config_json;
  /// Row-major: every view of row 0, then row 1, ...
  std::vector<OutputImage> images;
  std::optional<SequenceManifest> animation;
  Diagnostics warnings;

  bool operator==(const RunManifest&) const = default;
};

/// The manifest.json document written next to the images.
std::string to_json(const RunManifest& manifest);

struct RunOptions {
  /// Row x view renders in flight at once. Output does not depend on it.
  int jobs = 1;
  bool stills = true;
  /// Render animation frames when the config has an animation block.
  bool animation = true;
};

/// Everything checked before rendering starts: atlas and meshes, CSV,
/// exclusions, value ranges.
struct PreparedRun {
  Atlas atlas;
  RegionValueTable table;
  Diagnostics warnings;
};

/// Loads the atlas (with region_mapping applied), parses the CSV and checks
/// exclusions. Throws the first error found.
PreparedRun prepare_run(const RunConfig& config, std::string_view csv_text);

/// Non-[A-Za-z0-9_-] characters become '_'.
std::string sanitize_image_name(std::string_view name);

/// Renders <sanitized_image_name>_<view>.png for every row and view, plus
/// animation frames when enabled, and manifest.json. Files are produced in a
/// staging directory next to output_dir and moved in only after everything
/// succeeded, so a failed run leaves output_dir as it was.
RunManifest run_pipeline(const RunConfig& config, const std::filesystem::path& csv_path,
                         const RunOptions& options = {});
RunManifest run_pipeline_text(const RunConfig& config, std::string_view csv_text,
                              const RunOptions& options = {});

}  // namespace brainpaint

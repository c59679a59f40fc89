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


#include "brainpaint/pipeline.hpp"

#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "brainpaint/error.hpp"
#include "brainpaint/hash.hpp"
#include "brainpaint/png.hpp"
#include "json_util.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace brainpaint {

namespace fs = std::filesystem;

namespace {

std::string random_suffix() {
  std::random_device rd;
  std::uniform_int_distribution<std::uint64_t> dist;
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(dist(rd)));
  return buf;
}

fs::path normalized_dir(const fs::path& dir) {
  fs::path p = dir.lexically_normal();
  if (!p.has_filename() && p.has_parent_path()) p = p.parent_path();
  return p;
}

void check_exclusions(const Atlas& atlas, const std::vector<std::string>& exclude) {
  for (const std::string& name : exclude) {
    try {
      resolve_region(atlas, name);
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, "unknown_exclusion", std::string("exclude: ") + e.what(),
                  e.details());
    }
  }
}

/// A directory that is removed unless commit() moved its contents away.
class StagingDir {
 public:
  explicit StagingDir(const fs::path& output_dir) : target_(normalized_dir(output_dir)) {
    const fs::path parent = target_.has_parent_path() ? target_.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(parent, ec);
    if (ec) {
      throw Error(ErrorKind::kIo, "io_error",
                  "cannot create " + parent.string() + ": " + ec.message());
    }
    path_ = parent / ("." + target_.filename().string() + ".staging-" + random_suffix());
    fs::create_directory(path_, ec);
    if (ec) {
      throw Error(ErrorKind::kIo, "io_error",
                  "cannot create staging directory " + path_.string() + ": " + ec.message());
    }
  }
  StagingDir(const StagingDir&) = delete;
  StagingDir& operator=(const StagingDir&) = delete;
  ~StagingDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }

  const fs::path& path() const { return path_; }

  void commit() {
    std::error_code ec;
    if (!fs::exists(target_)) {
      fs::rename(path_, target_, ec);
      if (!ec) return;
    }
    fs::create_directories(target_, ec);
    for (const auto& entry : fs::directory_iterator(path_)) {
      fs::rename(entry.path(), target_ / entry.path().filename(), ec);
      if (ec) {
        throw Error(ErrorKind::kIo, "io_error",
                    "cannot move " + entry.path().string() + " into " + target_.string() +
                        ": " + ec.message());
      }
    }
  }

 private:
  fs::path target_;
  fs::path path_;
};

}  // namespace

std::string sanitize_image_name(std::string_view name) {
  std::string out(name);
  for (char& c : out) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

PreparedRun prepare_run(const RunConfig& config, std::string_view csv_text) {
  PreparedRun run;
  run.atlas = load_atlas(config.atlas, config.asset_root, config.surface);
  if (!config.region_mapping.empty()) {
    run.atlas = apply_custom_mapping(run.atlas, config.region_mapping);
  }
  check_exclusions(run.atlas, config.exclude);
  ParsedTable parsed = parse_biomarker_csv(csv_text, run.atlas);
  run.table = std::move(parsed.table);
  run.warnings = std::move(parsed.warnings);
  const Diagnostics range = check_range(run.table, config.gradient);
  run.warnings.insert(run.warnings.end(), range.begin(), range.end());

  std::set<std::string> names;
  for (std::size_t i = 0; i < run.table.rows.size(); ++i) {
    const std::string name = sanitize_image_name(run.table.rows[i].image_name);
    if (!names.insert(name).second) {
      throw Error(ErrorKind::kInput, "output_name_collision",
                  "image name '" + run.table.rows[i].image_name + "' (row " +
                      std::to_string(i + 2) + ") maps to the same file name '" + name +
                      "' as an earlier row",
                  {Diagnostic{Severity::kError, "output_name_collision", static_cast<int>(i + 2), 1,
                              "file name " + name}});
    }
  }
  return run;
}

std::string to_json(const RunManifest& manifest) {
  nlohmann::json images = nlohmann::json::array();
  for (const OutputImage& img : manifest.images) {
    images.push_back({{"file", img.file},
                      {"image_name", img.image_name},
                      {"row", img.row},
                      {"view", to_string(img.view)},
                      {"sha256", img.sha256}});
  }
  nlohmann::json doc = {{"format", "brainpaint-manifest"},
                        {"version", 1},
                        {"config", nlohmann::json::parse(manifest.config_json)},
                        {"images", images},
                        {"warnings", detail::diagnostics_json(manifest.warnings)}};
  doc["animation"] =
      manifest.animation ? detail::sequence_json(*manifest.animation) : nlohmann::json(nullptr);
  return doc.dump(2) + "\n";
}

RunManifest run_pipeline(const RunConfig& config, const fs::path& csv_path,
                         const RunOptions& options) {
  return run_pipeline_text(config, detail::read_file(csv_path), options);
}

RunManifest run_pipeline_text(const RunConfig& config, std::string_view csv_text,
                              const RunOptions& options) {
  PreparedRun run = prepare_run(config, csv_text);
  const SceneOptions scene_options = config.scene_options();
  RenderSettings settings = config.render_settings();
  MeshLibrary meshes;

  RunManifest manifest;
  manifest.config_json = config_to_json(config);

  // Scenes are built serially so mesh loading (and its warnings) happens in a
  // fixed order.
  std::vector<SceneSpec> scenes;
  if (options.stills) {
    for (std::size_t r = 0; r < run.table.rows.size(); ++r) {
      const RegionValueRow& row = run.table.rows[r];
      for (ViewPreset view : config.views) {
        scenes.push_back(build_scene(run.atlas, row.values, config.gradient, view, scene_options, meshes));
        manifest.images.push_back({sanitize_image_name(row.image_name) + "_" + to_string(view) + ".png",
                                   row.image_name, r, view, {}});
      }
    }
  }
  std::optional<FramePlan> plan;
  if (options.animation && config.animation) {
    plan = interpolate_rows(run.table, config.animation->frames_per_transition, config.animation->fps);
  }

  StagingDir staging(config.output_dir);
  const int jobs = std::max(1, options.jobs);
  RenderSettings still_settings = settings;
  if (scenes.size() < static_cast<std::size_t>(jobs)) {
    still_settings.raster.threads = jobs / std::max<int>(1, static_cast<int>(scenes.size()));
  }
  detail::parallel_for(scenes.size(), jobs, [&](std::size_t i) {
    const std::string png = encode_png(render_scene(scenes[i], meshes, still_settings));
    manifest.images[i].sha256 = sha256_hex(png);
    detail::write_file(staging.path() / manifest.images[i].file, png);
  });
  if (plan) {
    DirectorySink sink(staging.path());
    SequenceInputs inputs;
    inputs.atlas = &run.atlas;
    inputs.gradient = config.gradient;
    inputs.views = config.views;
    inputs.scene = scene_options;
    inputs.render = settings;
    inputs.meshes = &meshes;
    inputs.jobs = jobs;
    manifest.animation = render_sequence(*plan, inputs, sink);
  }

  manifest.warnings = std::move(run.warnings);
  const Diagnostics mesh_warnings = meshes.warnings();
  manifest.warnings.insert(manifest.warnings.end(), mesh_warnings.begin(), mesh_warnings.end());
  detail::write_file(staging.path() / "manifest.json", to_json(manifest));
  staging.commit();
  return manifest;
}

}  // namespace brainpaint

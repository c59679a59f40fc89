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


#include "brainpaint/animation.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "brainpaint/error.hpp"
#include "brainpaint/hash.hpp"
#include "brainpaint/png.hpp"
#include "json_util.hpp"
#include "parallel.hpp"
#include "text_util.hpp"

namespace brainpaint {

namespace {

RegionValues lerp_values(const RegionValueTable& table, std::size_t from, std::size_t to,
                         double t) {
  RegionValues out;
  for (const std::string& region : table.region_order) {
    out[region] = std::lerp(table.value_or_default(from, region),
                            table.value_or_default(to, region), t);
  }
  return out;
}

}  // namespace

FramePlan interpolate_rows(const RegionValueTable& table, int frames_per_transition,
                           double fps) {
  if (frames_per_transition < 1) {
    throw Error(ErrorKind::kConfig, "invalid_frames_per_transition",
                "frames_per_transition must be at least 1, got " +
                    std::to_string(frames_per_transition));
  }
  if (table.rows.empty()) {
    throw Error(ErrorKind::kInput, "empty_table", "cannot animate a table with no rows");
  }
  FramePlan plan;
  plan.fps = fps;
  const std::size_t rows = table.rows.size();
  const int f = frames_per_transition;
  for (std::size_t i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < f; ++j) {
      const double t = static_cast<double>(j) / f;
      plan.frames.push_back({static_cast<int>(plan.frames.size()),
                             lerp_values(table, i, i + 1, t), {i, i + 1, t}});
    }
  }
  const FrameSource last = rows == 1 ? FrameSource{0, 0, 0.0} : FrameSource{rows - 2, rows - 1, 1.0};
  plan.frames.push_back({static_cast<int>(plan.frames.size()),
                         lerp_values(table, last.row_from, last.row_to, last.t), last});
  return plan;
}

std::string frame_file_name(int index, ViewPreset view) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "frame_%05d_", index);
  return std::string(buf) + to_string(view) + ".png";
}

DirectorySink::DirectorySink(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) {
    throw Error(ErrorKind::kIo, "io_error",
                "cannot create directory " + dir_.string() + ": " + ec.message());
  }
}

void DirectorySink::write(const std::string& file, std::string_view bytes) {
  detail::write_file(dir_ / file, bytes);
}

void MemorySink::write(const std::string& file, std::string_view bytes) {
  std::lock_guard lock(mutex_);
  files_[file] = std::string(bytes);
}

std::map<std::string, std::string> MemorySink::files() const {
  std::lock_guard lock(mutex_);
  return files_;
}

SequenceManifest render_sequence(const FramePlan& plan, const SequenceInputs& inputs,
                                 FrameSink& sink) {
  if (!inputs.atlas || !inputs.meshes) {
    throw Error(ErrorKind::kConfig, "incomplete_inputs", "render_sequence needs an atlas and a mesh library");
  }
  SequenceManifest manifest;
  manifest.fps = plan.fps;
  std::vector<SceneSpec> scenes;
  for (std::size_t i = 0; i < plan.frames.size(); ++i) {
    const PlannedFrame& frame = plan.frames[i];
    if (frame.index != static_cast<int>(i)) {
      throw Error(ErrorKind::kConfig, "invalid_plan", "frame indices must be contiguous from 0");
    }
    for (ViewPreset view : inputs.views) {
      scenes.push_back(build_scene(*inputs.atlas, frame.values, inputs.gradient, view,
                                   inputs.scene, *inputs.meshes));
      manifest.frames.push_back({frame.index, view, frame_file_name(frame.index, view),
                                 frame.source, {}});
    }
  }
  detail::parallel_for(scenes.size(), inputs.jobs, [&](std::size_t i) {
    const std::string png = encode_png(render_scene(scenes[i], *inputs.meshes, inputs.render));
    manifest.frames[i].sha256 = sha256_hex(png);
    sink.write(manifest.frames[i].file, png);
  });
  return manifest;
}

std::string to_json(const SequenceManifest& manifest) {
  return detail::sequence_json(manifest).dump(2) + "\n";
}

}  // namespace brainpaint

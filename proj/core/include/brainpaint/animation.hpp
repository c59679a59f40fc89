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
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "brainpaint/ingest.hpp"
#include "brainpaint/scene.hpp"

namespace brainpaint {

/// Where a frame's values come from: lerp(row_from, row_to, t).
struct FrameSource {
  std::size_t row_from = 0;
  std::size_t row_to = 0;
  double t = 0.0;

  bool operator==(const FrameSource&) const = default;
};

struct PlannedFrame {
  int index = 0;
  RegionValues values;
  FrameSource source;

  bool operator==(const PlannedFrame&) const = default;
};

struct FramePlan {
  std::vector<PlannedFrame> frames;
  double fps = 24.0;

  bool operator==(const FramePlan&) const = default;
};

/// (R-1)*F + 1 frames. Transition i contributes t = j/F for j in [0, F); the
/// last frame is row R-1 itself (source R-2 -> R-1 at t = 1, or 0 -> 0 at
/// t = 0 when R = 1). Values use std::lerp, so t = 0 and t = 1 reproduce the
/// rows exactly. Throws Error(kConfig) for F < 1 and Error(kInput) for an
/// empty table.
FramePlan interpolate_rows(const RegionValueTable& table, int frames_per_transition,
                           double fps = 24.0);

/// "frame_00012_cortical_front.png".
std::string frame_file_name(int index, ViewPreset view);

/// Receives encoded frames. Implementations must accept concurrent writes of
/// distinct files.
class FrameSink {
 public:
  virtual ~FrameSink() = default;
  virtual void write(const std::string& file, std::string_view bytes) = 0;
};

class DirectorySink : public FrameSink {
 public:
  explicit DirectorySink(std::filesystem::path dir);
  void write(const std::string& file, std::string_view bytes) override;

 private:
  std::filesystem::path dir_;
};

class MemorySink : public FrameSink {
 public:
  void write(const std::string& file, std::string_view bytes) override;
  std::map<std::string, std::string> files() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::string> files_;
};

struct SequenceInputs {
  const Atlas* atlas = nullptr;
  GradientSpec gradient = default_gradient();
  std::vector<ViewPreset> views = default_views();
  SceneOptions scene;
  RenderSettings render;
  MeshLibrary* meshes = nullptr;
  /// Frames rendered concurrently.
  int jobs = 1;
};

struct SequenceEntry {
  int index = 0;
  ViewPreset view = ViewPreset::kCorticalFront;
  std::string file;
  FrameSource source;
  std::string sha256;

  bool operator==(const SequenceEntry&) const = default;
};

struct SequenceManifest {
  double fps = 24.0;
  /// Ordered by frame index, then by view order.
  std::vector<SequenceEntry> frames;

  bool operator==(const SequenceManifest&) const = default;
};

/// Renders every frame of the plan in every view and hands the PNGs to the
/// sink. Scenes are built up front, so a bad exclusion or view fails before
/// anything is written.
SequenceManifest render_sequence(const FramePlan& plan, const SequenceInputs& inputs,
                                 FrameSink& sink);

/// {"fps": ..., "frames": [{"index", "view", "file", "row_from", "row_to",
/// "t", "sha256"}]}
std::string to_json(const SequenceManifest& manifest);

}  // namespace brainpaint

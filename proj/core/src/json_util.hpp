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

#include <nlohmann/json.hpp>

#include "brainpaint/animation.hpp"
#include "brainpaint/error.hpp"

namespace brainpaint::detail {

inline nlohmann::json diagnostic_json(const Diagnostic& d) {
  nlohmann::json j = {{"severity", to_string(d.severity)}, {"code", d.code},
                      {"message", d.message}};
  j["row"] = d.row ? nlohmann::json(*d.row) : nlohmann::json(nullptr);
  j["column"] = d.column ? nlohmann::json(*d.column) : nlohmann::json(nullptr);
  return j;
}

inline nlohmann::json diagnostics_json(const Diagnostics& ds) {
  nlohmann::json out = nlohmann::json::array();
  for (const Diagnostic& d : ds) out.push_back(diagnostic_json(d));
  return out;
}

inline nlohmann::json sequence_json(const SequenceManifest& manifest) {
  nlohmann::json frames = nlohmann::json::array();
  for (const SequenceEntry& e : manifest.frames) {
    frames.push_back({{"index", e.index},
                      {"view", to_string(e.view)},
                      {"file", e.file},
                      {"row_from", e.source.row_from},
                      {"row_to", e.source.row_to},
                      {"t", e.source.t},
                      {"sha256", e.sha256}});
  }
  return {{"fps", manifest.fps}, {"frames", std::move(frames)}};
}

}  // namespace brainpaint::detail

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
#include <span>
#include <string>

#include "brainpaint/renderer.hpp"

namespace brainpaint {

/// 8-bit RGBA PNG with fixed encoder settings (zlib level 6, no ancillary
/// chunks), so equal buffers give equal bytes.
std::string encode_png(const ImageBuffer& image);

/// Decodes any 8-bit PNG into RGBA. Throws Error(kInput) on malformed data.
ImageBuffer decode_png(std::span<const std::uint8_t> bytes);
ImageBuffer decode_png(const std::string& bytes);

}  // namespace brainpaint

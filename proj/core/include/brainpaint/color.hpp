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
#include <string_view>
#include <utility>

namespace brainpaint {

/// An 8-bit sRGB color.
struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  bool operator==(const Rgb8&) const = default;
};

/// Named colors accepted in configuration files. CSS values.
std::span<const std::pair<std::string_view, Rgb8>> named_colors();

/// Parses "#RRGGBB" (case-insensitive) or one of named_colors().
/// Throws brainpaint::Error (kConfig) on anything else.
Rgb8 parse_color(std::string_view text);

/// Lowercase "#rrggbb".
std::string to_hex(Rgb8 color);

}  // namespace brainpaint

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

#include "brainpaint/color.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "brainpaint/error.hpp"

namespace brainpaint {

namespace {

constexpr std::array<std::pair<std::string_view, Rgb8>, 16> kNamedColors = {{
    {"white", {255, 255, 255}},
    {"black", {0, 0, 0}},
    {"red", {255, 0, 0}},
    {"green", {0, 128, 0}},
    {"blue", {0, 0, 255}},
    {"yellow", {255, 255, 0}},
    {"orange", {255, 165, 0}},
    {"purple", {128, 0, 128}},
    {"cyan", {0, 255, 255}},
    {"magenta", {255, 0, 255}},
    {"gray", {128, 128, 128}},
    {"brown", {165, 42, 42}},
    {"pink", {255, 192, 203}},
    {"lime", {0, 255, 0}},
    {"navy", {0, 0, 128}},
    {"teal", {0, 128, 128}},
}};

}  // namespace

std::span<const std::pair<std::string_view, Rgb8>> named_colors() {
  return kNamedColors;
}

Rgb8 parse_color(std::string_view text) {
  if (text.size() == 7 && text[0] == '#') {
    std::uint32_t value = 0;
    const char* first = text.data() + 1;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value, 16);
    if (ec == std::errc{} && ptr == last) {
      return Rgb8{static_cast<std::uint8_t>((value >> 16) & 0xff),
                  static_cast<std::uint8_t>((value >> 8) & 0xff),
                  static_cast<std::uint8_t>(value & 0xff)};
    }
  } else {
    std::string lowered(text);
    for (char& c : lowered) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    for (const auto& [name, color] : kNamedColors) {
      if (name == lowered) return color;
    }
  }
  throw Error(ErrorKind::kConfig, "invalid_color",
              "invalid color '" + std::string(text) +
                  "': expected #RRGGBB or a named color");
}

std::string to_hex(Rgb8 color) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "#";
  for (std::uint8_t channel : {color.r, color.g, color.b}) {
    out.push_back(kDigits[channel >> 4]);
    out.push_back(kDigits[channel & 0xf]);
  }
  return out;
}

}  // namespace brainpaint

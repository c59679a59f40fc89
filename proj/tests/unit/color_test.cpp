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

#include <gtest/gtest.h>

#include "brainpaint/error.hpp"

namespace brainpaint {
namespace {

TEST(Color, ParsesHexInEitherCase) {
  EXPECT_EQ(parse_color("#FF8000"), (Rgb8{255, 128, 0}));
  EXPECT_EQ(parse_color("#ff8000"), (Rgb8{255, 128, 0}));
  EXPECT_EQ(parse_color("#000000"), (Rgb8{0, 0, 0}));
}

TEST(Color, ParsesNames) {
  EXPECT_EQ(parse_color("white"), (Rgb8{255, 255, 255}));
  EXPECT_EQ(parse_color("orange"), (Rgb8{255, 165, 0}));
  EXPECT_EQ(parse_color("yellow"), (Rgb8{255, 255, 0}));
  for (const auto& [name, rgb] : named_colors()) EXPECT_EQ(parse_color(name), rgb) << name;
}

TEST(Color, RejectsGarbage) {
  for (const char* bad : {"", "#fff", "#GGGGGG", "#1234567", "chartreuse", "FF0000", " #FF0000x"}) {
    try {
      parse_color(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kConfig);
      EXPECT_EQ(e.code(), "invalid_color");
    }
  }
}

TEST(Color, HexRoundTrip) {
  for (int v = 0; v < 256; v += 17) {
    const Rgb8 c{static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(255 - v),
                 static_cast<std::uint8_t>(v / 2)};
    EXPECT_EQ(parse_color(to_hex(c)), c);
  }
  EXPECT_EQ(to_hex({255, 0, 171}), "#ff00ab");
}

}  // namespace
}  // namespace brainpaint

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

#include "brainpaint/gradient.hpp"

#include <cmath>
#include <string>

namespace brainpaint {

GradientSpec default_gradient() {
  return GradientSpec{{{255, 255, 255}, {255, 255, 0}, {255, 165, 0}, {255, 0, 0}}};
}

GradientSpec make_gradient(const std::vector<Rgb8>& colors) {
  GradientSpec g;
  g.controls.reserve(colors.size());
  for (Rgb8 c : colors) g.controls.push_back({c.r, c.g, c.b});
  return g;
}

std::optional<Diagnostic> validate(const GradientSpec& gradient) {
  if (gradient.controls.size() < 2) {
    return Diagnostic{Severity::kError, "gradient_too_short", std::nullopt,
                      std::nullopt, "need at least 2 controls"};
  }
  for (std::size_t i = 0; i < gradient.controls.size(); ++i) {
    const ControlColor& c = gradient.controls[i];
    for (int channel : {c.r, c.g, c.b}) {
      if (channel < 0 || channel > 255) {
        return Diagnostic{Severity::kError, "gradient_channel_range",
                          std::nullopt, std::nullopt,
                          "control " + std::to_string(i) + " has channel " +
                              std::to_string(channel) + " outside 0-255"};
      }
    }
  }
  return std::nullopt;
}

std::uint8_t round_channel(double x) {
  const double r = std::floor(x + 0.5);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<std::uint8_t>(r);
}

Rgb8 color_at(const GradientSpec& gradient, double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::kInput, "non_finite_value",
                "gradient lookup needs a finite value");
  }
  if (auto problem = validate(gradient)) {
    throw Error(ErrorKind::kConfig, problem->code, problem->message);
  }
  const int k = gradient.max_value();
  if (value <= 0.0) value = 0.0;
  if (value >= k) {
    const ControlColor& last = gradient.controls.back();
    return Rgb8{static_cast<std::uint8_t>(last.r), static_cast<std::uint8_t>(last.g),
                static_cast<std::uint8_t>(last.b)};
  }
  const int i = static_cast<int>(std::floor(value));
  const double t = value - i;
  const ControlColor& lo = gradient.controls[i];
  const ControlColor& hi = gradient.controls[i + 1];
  // std::lerp is exact at the endpoints and monotone in t.
  auto mix = [t](int a, int b) { return round_channel(std::lerp(double(a), double(b), t)); };
  return Rgb8{mix(lo.r, hi.r), mix(lo.g, hi.g), mix(lo.b, hi.b)};
}

}  // namespace brainpaint

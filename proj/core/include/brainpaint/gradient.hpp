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

#include <optional>
#include <vector>

#include "brainpaint/color.hpp"
#include "brainpaint/error.hpp"

namespace brainpaint {

/// A control color before validation. Channels are ints so that
/// out-of-range input survives long enough to be reported.
struct ControlColor {
  int r = 0;
  int g = 0;
  int b = 0;

  bool operator==(const ControlColor&) const = default;
};

/// Ordered control colors. Control i is the exact color at value i, so a
/// gradient with K+1 controls covers the value range [0, K].
struct GradientSpec {
  std::vector<ControlColor> controls;

  /// K, the largest value that maps to a control.
  int max_value() const { return static_cast<int>(controls.size()) - 1; }

  bool operator==(const GradientSpec&) const = default;
};

/// White, yellow, orange, red.
GradientSpec default_gradient();

GradientSpec make_gradient(const std::vector<Rgb8>& colors);

/// Returns nullopt when the gradient is usable, otherwise a diagnostic that
/// names the first offending control index.
std::optional<Diagnostic> validate(const GradientSpec& gradient);

/// Piecewise-linear interpolation on 8-bit channels with round-half-up.
/// Values outside [0, K] clamp to the end controls. Throws Error(kInput) for a
/// non-finite value and Error(kConfig) for an invalid gradient.
Rgb8 color_at(const GradientSpec& gradient, double value);

/// floor(x + 0.5) clamped to [0, 255].
std::uint8_t round_channel(double x);

}  // namespace brainpaint

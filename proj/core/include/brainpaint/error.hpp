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
#include <stdexcept>
#include <string>
#include <vector>

namespace brainpaint {

enum class Severity { kInfo, kWarning, kError };

const char* to_string(Severity severity);

/// One structured diagnostic record. `row` and `column` are 1-based positions
/// in the originating document when they apply.
struct Diagnostic {
  Severity severity = Severity::kWarning;
  std::string code;
  std::optional<int> row;
  std::optional<int> column;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

Diagnostic make_warning(std::string code, std::string message,
                        std::optional<int> row = std::nullopt,
                        std::optional<int> column = std::nullopt);

/// "LEVEL code message" single-line rendering used on stderr.
std::string format_diagnostic(const Diagnostic& d);

/// Error categories. They map one-to-one onto CLI exit codes.
enum class ErrorKind {
  kInput,   // CSV, OBJ, atlas names
  kConfig,  // run configuration
  kRender,  // rasterizer limits, scene assembly
  kIo,      // filesystem
};

int exit_code_for(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message,
        Diagnostics details = {});

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }
  const Diagnostics& details() const { return details_; }

 private:
  ErrorKind kind_;
  std::string code_;
  Diagnostics details_;
};

}  // namespace brainpaint

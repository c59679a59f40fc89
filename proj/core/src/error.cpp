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

#include "brainpaint/error.hpp"

#include <sstream>

namespace brainpaint {

const char* to_string(Severity severity) {
  switch (severity) {
    case Severity::kInfo:
      return "INFO";
    case Severity::kWarning:
      return "WARN";
    case Severity::kError:
      return "ERROR";
  }
  return "?";
}

Diagnostic make_warning(std::string code, std::string message,
                        std::optional<int> row, std::optional<int> column) {
  return Diagnostic{Severity::kWarning, std::move(code), row, column,
                    std::move(message)};
}

std::string format_diagnostic(const Diagnostic& d) {
  std::ostringstream out;
  out << to_string(d.severity) << ' ' << d.code << ' ';
  if (d.row && d.column) {
    out << "(row " << *d.row << ", column " << *d.column << ") ";
  } else if (d.row) {
    out << "(row " << *d.row << ") ";
  } else if (d.column) {
    out << "(column " << *d.column << ") ";
  }
  out << d.message;
  return out.str();
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInput:
      return 2;
    case ErrorKind::kConfig:
      return 3;
    case ErrorKind::kRender:
    case ErrorKind::kIo:
      return 4;
  }
  return 4;
}

Error::Error(ErrorKind kind, std::string code, const std::string& message,
             Diagnostics details)
    : std::runtime_error(message),
      kind_(kind),
      code_(std::move(code)),
      details_(std::move(details)) {}

}  // namespace brainpaint

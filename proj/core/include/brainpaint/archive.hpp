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

#include <string>
#include <string_view>
#include <vector>

namespace brainpaint {

struct ArchiveEntry {
  std::string name;
  std::string data;

  bool operator==(const ArchiveEntry&) const = default;
};

/// Uncompressed ("stored") ZIP. Entries are written sorted by name with a
/// fixed timestamp, so equal inputs give equal bytes.
std::string write_zip(std::vector<ArchiveEntry> entries);

/// Reads archives produced by write_zip (stored entries only). Throws
/// Error(kInput) on anything it cannot read or a CRC mismatch.
std::vector<ArchiveEntry> read_zip(std::string_view bytes);

}  // namespace brainpaint

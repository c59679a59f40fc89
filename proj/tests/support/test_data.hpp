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
#include <filesystem>
#include <string>

namespace brainpaint::testing {

/// Two subjects, three regions.
inline constexpr const char* kTwoBrainCsv =
    "Image-name-unique,Hippocampus,Inferior temporal,Superior parietal\n"
    "Brain 1,0.6,2.3,1.3\n"
    "Brain 2,1.2,0.0,3.0\n";

/// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& prefix = "brainpaint-test");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

/// Fixture meshes for every builtin atlas, generated once per process into a
/// shared temp directory. Returns the asset root.
const std::filesystem::path& shared_fixture_assets(std::uint64_t seed = 7);

std::string read_text(const std::filesystem::path& path);
/// Creates parent directories as needed.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace brainpaint::testing

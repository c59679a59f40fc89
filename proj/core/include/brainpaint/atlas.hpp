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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace brainpaint {

/// Which hemisphere(s) a region occupies. A bilateral region is one ROI with
/// a mesh in each hemisphere; both meshes take the same value.
enum class Hemisphere { kLeft, kRight, kMidline, kBilateral };

enum class RegionClass { kCortical, kSubcortical };

/// A single mesh instance of a region.
enum class Side { kLeft, kRight, kMidline };

/// Cortical surface variant. Selects an asset set, nothing is computed.
enum class Surface { kPial, kInflated };

const char* to_string(Hemisphere h);
const char* to_string(RegionClass k);
const char* to_string(Side s);
const char* to_string(Surface s);
Hemisphere parse_hemisphere(std::string_view text);
RegionClass parse_region_class(std::string_view text);
Surface parse_surface(std::string_view text);

struct RegionDef {
  std::string canonical_name;
  Hemisphere hemisphere = Hemisphere::kBilateral;
  RegionClass klass = RegionClass::kCortical;
  std::string mesh_key;

  bool operator==(const RegionDef&) const = default;
};

/// Mesh instances of a region, in left, right, midline order.
std::vector<Side> sides_of(const RegionDef& region);

/// File name of one mesh instance, e.g. "lh.hippocampus.obj" or
/// "rh.precuneus.inflated.obj".
std::string mesh_file_name(const RegionDef& region, Side side, Surface surface);

/// An immutable set of regions plus the alias table used to resolve CSV
/// headers. Built by parse_atlas_manifest or load_atlas.
class Atlas {
 public:
  Atlas() = default;
  Atlas(std::string name, std::vector<RegionDef> regions,
        std::map<std::string, std::string> aliases);

  const std::string& name() const { return name_; }
  const std::vector<RegionDef>& regions() const { return regions_; }
  const std::map<std::string, std::string>& aliases() const { return aliases_; }

  /// Exact canonical-name lookup; nullptr when absent.
  const RegionDef* find(std::string_view canonical_name) const;

  /// Where the meshes live. Empty for an atlas that was only parsed.
  const std::filesystem::path& asset_root() const { return asset_root_; }
  Surface surface() const { return surface_; }
  std::filesystem::path mesh_path(const RegionDef& region, Side side) const;

  bool operator==(const Atlas& other) const;

 private:
  friend Atlas load_atlas(std::string_view, const std::filesystem::path&, Surface);
  friend Atlas apply_custom_mapping(const Atlas&,
                                    const std::map<std::string, std::string>&);

  std::string name_;
  std::vector<RegionDef> regions_;
  std::map<std::string, std::string> aliases_;
  std::unordered_map<std::string, std::size_t> index_;
  std::filesystem::path asset_root_;
  Surface surface_ = Surface::kPial;
};

std::vector<std::string> builtin_atlas_names();

/// Parses manifest text (tab-separated canonical_name, hemisphere, klass,
/// mesh_key; '#' comments) and optional alias text (alias TAB canonical_name).
/// Validates every atlas invariant.
Atlas parse_atlas_manifest(std::string name, std::string_view manifest,
                           std::string_view aliases = {});

/// The region list and aliases of an atlas without touching mesh assets.
/// Builtin names use the compiled-in manifests; other names read
/// `<asset_root>/<name>/atlas.tsv` (plus `aliases.tsv` when present).
Atlas read_atlas_definition(std::string_view name,
                            const std::filesystem::path& asset_root);

/// Builtin atlases come from the manifests compiled into the library; any
/// other name loads `<asset_root>/<name>/atlas.tsv` (and `aliases.tsv` when
/// present). Every mesh instance for `surface` must exist under
/// `<asset_root>/<name>/`.
Atlas load_atlas(std::string_view name, const std::filesystem::path& asset_root,
                 Surface surface = Surface::kPial);

/// Trim, lowercase, collapse runs of spaces, hyphens and periods into one
/// underscore.
std::string normalize_region_name(std::string_view raw);

/// Canonical names nearest to `raw` by edit distance after normalization.
std::vector<std::string> closest_region_names(const Atlas& atlas,
                                              std::string_view raw,
                                              std::size_t count = 3);

/// Normalizes, then looks up canonical names, then aliases. Throws
/// Error(kInput, "unresolved_region") carrying the three closest canonical
/// names as "suggestion" details.
const RegionDef& resolve_region(const Atlas& atlas, std::string_view raw_name);

/// Returns a copy whose alias table also contains `mapping`
/// (custom name -> region). The region list is untouched.
Atlas apply_custom_mapping(const Atlas& atlas,
                           const std::map<std::string, std::string>& mapping);

std::size_t edit_distance(std::string_view a, std::string_view b);

}  // namespace brainpaint

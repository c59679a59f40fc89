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

#include "brainpaint/atlas.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "brainpaint/error.hpp"
#include "builtin_atlases.hpp"
#include "text_util.hpp"

namespace brainpaint {

namespace {

bool is_canonical_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

bool is_mesh_key(std::string_view s) {
  if (s.empty() || s.front() == '.') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           c == '.';
  });
}

[[noreturn]] void manifest_error(const std::string& atlas, int line,
                                 const std::string& message) {
  throw Error(ErrorKind::kInput, "invalid_atlas_manifest",
              "atlas '" + atlas + "' line " + std::to_string(line) + ": " +
                  message);
}

const detail::BuiltinAtlasText* find_builtin(std::string_view name) {
  for (const auto& text : detail::builtin_atlas_texts()) {
    if (text.name == name) return &text;
  }
  return nullptr;
}

}  // namespace

const char* to_string(Hemisphere h) {
  switch (h) {
    case Hemisphere::kLeft:
      return "left";
    case Hemisphere::kRight:
      return "right";
    case Hemisphere::kMidline:
      return "midline";
    case Hemisphere::kBilateral:
      return "bilateral";
  }
  return "?";
}

const char* to_string(RegionClass k) {
  return k == RegionClass::kCortical ? "cortical" : "subcortical";
}

const char* to_string(Side s) {
  switch (s) {
    case Side::kLeft:
      return "left";
    case Side::kRight:
      return "right";
    case Side::kMidline:
      return "midline";
  }
  return "?";
}

const char* to_string(Surface s) {
  return s == Surface::kPial ? "pial" : "inflated";
}

Hemisphere parse_hemisphere(std::string_view text) {
  if (text == "left") return Hemisphere::kLeft;
  if (text == "right") return Hemisphere::kRight;
  if (text == "midline") return Hemisphere::kMidline;
  if (text == "bilateral") return Hemisphere::kBilateral;
  throw Error(ErrorKind::kInput, "invalid_hemisphere",
              "unknown hemisphere '" + std::string(text) + "'");
}

RegionClass parse_region_class(std::string_view text) {
  if (text == "cortical") return RegionClass::kCortical;
  if (text == "subcortical") return RegionClass::kSubcortical;
  throw Error(ErrorKind::kInput, "invalid_region_class",
              "unknown region class '" + std::string(text) + "'");
}

Surface parse_surface(std::string_view text) {
  if (text == "pial") return Surface::kPial;
  if (text == "inflated") return Surface::kInflated;
  throw Error(ErrorKind::kConfig, "invalid_surface",
              "unknown surface '" + std::string(text) + "' (expected pial or inflated)");
}

std::vector<Side> sides_of(const RegionDef& region) {
  switch (region.hemisphere) {
    case Hemisphere::kLeft:
      return {Side::kLeft};
    case Hemisphere::kRight:
      return {Side::kRight};
    case Hemisphere::kMidline:
      return {Side::kMidline};
    case Hemisphere::kBilateral:
      return {Side::kLeft, Side::kRight};
  }
  return {};
}

std::string mesh_file_name(const RegionDef& region, Side side, Surface surface) {
  std::string name;
  if (side == Side::kLeft) name = "lh.";
  if (side == Side::kRight) name = "rh.";
  name += region.mesh_key;
  if (region.klass == RegionClass::kCortical) {
    name += '.';
    name += to_string(surface);
  }
  name += ".obj";
  return name;
}

Atlas::Atlas(std::string name, std::vector<RegionDef> regions,
             std::map<std::string, std::string> aliases)
    : name_(std::move(name)), regions_(std::move(regions)), aliases_(std::move(aliases)) {
  std::set<std::string_view> mesh_keys;
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const RegionDef& r = regions_[i];
    if (!is_canonical_identifier(r.canonical_name)) {
      throw Error(ErrorKind::kInput, "invalid_atlas_manifest",
                  "atlas '" + name_ + "': region name '" + r.canonical_name +
                      "' must be nonempty [a-z0-9_]");
    }
    if (!is_mesh_key(r.mesh_key)) {
      throw Error(ErrorKind::kInput, "invalid_atlas_manifest",
                  "atlas '" + name_ + "': invalid mesh key '" + r.mesh_key + "'");
    }
    if (!index_.emplace(r.canonical_name, i).second) {
      throw Error(ErrorKind::kInput, "invalid_atlas_manifest",
                  "atlas '" + name_ + "': duplicate region '" + r.canonical_name + "'");
    }
    if (!mesh_keys.insert(r.mesh_key).second) {
      throw Error(ErrorKind::kInput, "invalid_atlas_manifest",
                  "atlas '" + name_ + "': duplicate mesh key '" + r.mesh_key + "'");
    }
  }
  for (const auto& [alias, target] : aliases_) {
    if (index_.count(alias)) {
      throw Error(ErrorKind::kInput, "invalid_atlas_manifest",
                  "atlas '" + name_ + "': alias '" + alias +
                      "' shadows a canonical region name");
    }
    if (!index_.count(target)) {
      throw Error(ErrorKind::kInput, "invalid_atlas_manifest",
                  "atlas '" + name_ + "': alias '" + alias +
                      "' points at unknown region '" + target + "'");
    }
  }
}

const RegionDef* Atlas::find(std::string_view canonical_name) const {
  auto it = index_.find(std::string(canonical_name));
  return it == index_.end() ? nullptr : &regions_[it->second];
}

std::filesystem::path Atlas::mesh_path(const RegionDef& region, Side side) const {
  return asset_root_ / name_ / mesh_file_name(region, side, surface_);
}

bool Atlas::operator==(const Atlas& other) const {
  return name_ == other.name_ && regions_ == other.regions_ &&
         aliases_ == other.aliases_ && asset_root_ == other.asset_root_ &&
         surface_ == other.surface_;
}

std::vector<std::string> builtin_atlas_names() {
  std::vector<std::string> names;
  for (const auto& text : detail::builtin_atlas_texts()) names.emplace_back(text.name);
  return names;
}

Atlas parse_atlas_manifest(std::string name, std::string_view manifest,
                           std::string_view aliases) {
  std::vector<RegionDef> regions;
  int line_no = 0;
  for (std::string_view line : detail::split_lines(manifest)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 4) {
      manifest_error(name, line_no, "expected 4 tab-separated fields, got " +
                                        std::to_string(fields.size()));
    }
    RegionDef region;
    region.canonical_name = std::string(fields[0]);
    try {
      region.hemisphere = parse_hemisphere(fields[1]);
      region.klass = parse_region_class(fields[2]);
    } catch (const Error& e) {
      manifest_error(name, line_no, e.what());
    }
    region.mesh_key = std::string(fields[3]);
    regions.push_back(std::move(region));
  }

  std::map<std::string, std::string> alias_table;
  line_no = 0;
  for (std::string_view line : detail::split_lines(aliases)) {
    ++line_no;
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto fields = detail::split(line, '\t');
    if (fields.size() != 2) {
      manifest_error(name + " aliases", line_no, "expected alias<TAB>canonical_name");
    }
    alias_table[normalize_region_name(fields[0])] = std::string(fields[1]);
  }
  return Atlas(std::move(name), std::move(regions), std::move(alias_table));
}

Atlas read_atlas_definition(std::string_view name,
                            const std::filesystem::path& asset_root) {
  if (const auto* builtin = find_builtin(name)) {
    return parse_atlas_manifest(std::string(name), builtin->manifest, builtin->aliases);
  }
  const bool safe_name = is_canonical_identifier(name);
  const auto manifest_path = asset_root / std::string(name) / "atlas.tsv";
  if (!safe_name || !std::filesystem::is_regular_file(manifest_path)) {
    throw Error(ErrorKind::kConfig, "unknown_atlas",
                "unknown atlas '" + std::string(name) + "'");
  }
  const auto aliases_path = asset_root / std::string(name) / "aliases.tsv";
  std::string alias_text;
  if (std::filesystem::is_regular_file(aliases_path)) {
    alias_text = detail::read_file(aliases_path);
  }
  return parse_atlas_manifest(std::string(name), detail::read_file(manifest_path),
                              alias_text);
}

Atlas load_atlas(std::string_view name, const std::filesystem::path& asset_root,
                 Surface surface) {
  Atlas atlas = read_atlas_definition(name, asset_root);
  atlas.asset_root_ = asset_root;
  atlas.surface_ = surface;

  for (const RegionDef& region : atlas.regions()) {
    for (Side side : sides_of(region)) {
      const auto path = atlas.mesh_path(region, side);
      if (!std::filesystem::is_regular_file(path)) {
        throw Error(ErrorKind::kInput, "missing_mesh_asset",
                    "region '" + region.canonical_name + "' (" + to_string(side) +
                        "): mesh asset not found at " + path.string());
      }
    }
  }
  return atlas;
}

std::string normalize_region_name(std::string_view raw) {
  std::string out;
  bool pending_sep = false;
  for (char c : detail::trim(raw)) {
    if (c == ' ' || c == '-' || c == '.') {
      pending_sep = true;
      continue;
    }
    if (pending_sep) {
      out.push_back('_');
      pending_sep = false;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (pending_sep) out.push_back('_');
  return out;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::vector<std::string> closest_region_names(const Atlas& atlas, std::string_view raw,
                                              std::size_t count) {
  const std::string key = normalize_region_name(raw);
  std::vector<std::pair<std::size_t, std::string>> scored;
  scored.reserve(atlas.regions().size());
  for (const RegionDef& r : atlas.regions()) {
    scored.emplace_back(edit_distance(key, r.canonical_name), r.canonical_name);
  }
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < scored.size() && i < count; ++i) {
    names.push_back(scored[i].second);
  }
  return names;
}

const RegionDef& resolve_region(const Atlas& atlas, std::string_view raw_name) {
  const std::string key = normalize_region_name(raw_name);
  if (key.empty()) {
    throw Error(ErrorKind::kInput, "empty_region_name", "region name is empty");
  }
  if (const RegionDef* r = atlas.find(key)) return *r;
  if (auto it = atlas.aliases().find(key); it != atlas.aliases().end()) {
    return *atlas.find(it->second);
  }
  const auto suggestions = closest_region_names(atlas, key);
  std::string message = "unknown region '" + std::string(raw_name) + "' in atlas '" +
                        atlas.name() + "'";
  Diagnostics details;
  if (!suggestions.empty()) {
    message += "; did you mean ";
    for (std::size_t i = 0; i < suggestions.size(); ++i) {
      if (i) message += ", ";
      message += "'" + suggestions[i] + "'";
      details.push_back(Diagnostic{Severity::kInfo, "suggestion", std::nullopt,
                                   std::nullopt, suggestions[i]});
    }
    message += "?";
  }
  throw Error(ErrorKind::kInput, "unresolved_region", message, std::move(details));
}

Atlas apply_custom_mapping(const Atlas& atlas,
                           const std::map<std::string, std::string>& mapping) {
  Atlas result = atlas;
  for (const auto& [source, target] : mapping) {
    const std::string key = normalize_region_name(source);
    if (key.empty()) {
      throw Error(ErrorKind::kConfig, "invalid_mapping", "mapping source is empty");
    }
    if (atlas.find(key)) {
      throw Error(ErrorKind::kConfig, "mapping_collision",
                  "mapping source '" + source +
                      "' collides with an existing canonical region name");
    }
    const RegionDef* resolved = nullptr;
    try {
      resolved = &resolve_region(atlas, target);
    } catch (const Error&) {
      throw Error(ErrorKind::kConfig, "mapping_target_not_found",
                  "mapping target not found: '" + target + "' (from '" + source + "')");
    }
    result.aliases_[key] = resolved->canonical_name;
  }
  return result;
}

}  // namespace brainpaint

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

#include <gtest/gtest.h>

#include <set>

#include "brainpaint/error.hpp"
#include "brainpaint/mesh.hpp"
#include "test_data.hpp"

namespace brainpaint {
namespace {

using testing::TempDir;

TEST(Atlas, BuiltinsParseAndHaveExpectedRegions) {
  const auto names = builtin_atlas_names();
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()),
            (std::set<std::string>{"desikan_killiany", "destrieux", "tourville"}));
  const Atlas dk = read_atlas_definition("desikan_killiany", {});
  int cortical = 0;
  for (const auto& r : dk.regions()) cortical += r.klass == RegionClass::kCortical;
  EXPECT_EQ(cortical, 34);
  ASSERT_NE(dk.find("hippocampus"), nullptr);
  EXPECT_EQ(dk.find("hippocampus")->klass, RegionClass::kSubcortical);
  ASSERT_NE(dk.find("superior_parietal"), nullptr);
  ASSERT_NE(dk.find("brain_stem"), nullptr);
  EXPECT_EQ(dk.find("brain_stem")->hemisphere, Hemisphere::kMidline);
  EXPECT_EQ(read_atlas_definition("destrieux", {}).regions().size() -
                read_atlas_definition("tourville", {}).regions().size(),
            74u - 31u);
}

TEST(Atlas, NormalizeRegionName) {
  EXPECT_EQ(normalize_region_name("  Superior parietal "), "superior_parietal");
  EXPECT_EQ(normalize_region_name("Left-Thalamus-Proper"), "left_thalamus_proper");
  EXPECT_EQ(normalize_region_name("a . - b"), "a_b");
  EXPECT_EQ(normalize_region_name("x-"), "x_");
  EXPECT_EQ(normalize_region_name(""), "");
}

TEST(Atlas, ResolvesCanonicalNamesAndAliases) {
  const Atlas dk = read_atlas_definition("desikan_killiany", {});
  EXPECT_EQ(resolve_region(dk, "Hippocampus").canonical_name, "hippocampus");
  EXPECT_EQ(resolve_region(dk, "Inferior temporal").canonical_name, "inferior_temporal");
  EXPECT_EQ(resolve_region(dk, "superiorparietal").canonical_name, "superior_parietal");
  EXPECT_EQ(resolve_region(dk, "Thalamus-Proper").canonical_name, "thalamus");
}

TEST(Atlas, UnresolvedNameCarriesThreeSuggestions) {
  const Atlas dk = read_atlas_definition("desikan_killiany", {});
  try {
    resolve_region(dk, "Hipocampus");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInput);
    EXPECT_EQ(e.code(), "unresolved_region");
    ASSERT_EQ(e.details().size(), 3u);
    EXPECT_EQ(e.details()[0].code, "suggestion");
    EXPECT_EQ(e.details()[0].message, "hippocampus");
  }
  EXPECT_THROW(resolve_region(dk, "   "), Error);
}

TEST(Atlas, EditDistance) {
  EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
  EXPECT_EQ(edit_distance("", "abc"), 3u);
  EXPECT_EQ(edit_distance("same", "same"), 0u);
}

TEST(Atlas, ManifestInvariants) {
  EXPECT_THROW(parse_atlas_manifest("a", "x\tleft\tcortical\tx\nx\tleft\tcortical\ty\n"), Error);
  EXPECT_THROW(parse_atlas_manifest("a", "x\tleft\tcortical\tk\ny\tleft\tcortical\tk\n"), Error);
  EXPECT_THROW(parse_atlas_manifest("a", "X Y\tleft\tcortical\tk\n"), Error);
  EXPECT_THROW(parse_atlas_manifest("a", "x\tup\tcortical\tk\n"), Error);
  EXPECT_THROW(parse_atlas_manifest("a", "x\tleft\tcortical\n"), Error);
  EXPECT_THROW(parse_atlas_manifest("a", "x\tleft\tcortical\tk\n", "alias\tnope\n"), Error);
  EXPECT_THROW(parse_atlas_manifest("a", "x\tleft\tcortical\tk\ny\tleft\tcortical\tj\n", "x\ty\n"),
               Error);
  const Atlas ok = parse_atlas_manifest("a", "# c\n\nx\tleft\tcortical\tk\n", "ex\tx\n");
  EXPECT_EQ(ok.regions().size(), 1u);
  EXPECT_EQ(resolve_region(ok, "EX").canonical_name, "x");
}

TEST(Atlas, MeshFileNames) {
  RegionDef cortical{"precuneus", Hemisphere::kBilateral, RegionClass::kCortical, "precuneus"};
  RegionDef sub{"hippocampus", Hemisphere::kBilateral, RegionClass::kSubcortical, "hippocampus"};
  RegionDef mid{"brain_stem", Hemisphere::kMidline, RegionClass::kSubcortical, "brain_stem"};
  EXPECT_EQ(mesh_file_name(cortical, Side::kRight, Surface::kInflated), "rh.precuneus.inflated.obj");
  EXPECT_EQ(mesh_file_name(cortical, Side::kLeft, Surface::kPial), "lh.precuneus.pial.obj");
  EXPECT_EQ(mesh_file_name(sub, Side::kLeft, Surface::kInflated), "lh.hippocampus.obj");
  EXPECT_EQ(mesh_file_name(mid, Side::kMidline, Surface::kPial), "brain_stem.obj");
  EXPECT_EQ(sides_of(cortical), (std::vector<Side>{Side::kLeft, Side::kRight}));
  EXPECT_EQ(sides_of(mid), (std::vector<Side>{Side::kMidline}));
}

TEST(Atlas, LoadAtlasChecksAssets) {
  TempDir dir;
  try {
    load_atlas("desikan_killiany", dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "missing_mesh_asset");
  }
  write_fixture_assets(dir.path(), 3, {"desikan_killiany"});
  const Atlas pial = load_atlas("desikan_killiany", dir.path(), Surface::kPial);
  const Atlas inflated = load_atlas("desikan_killiany", dir.path(), Surface::kInflated);
  EXPECT_EQ(pial.regions(), inflated.regions());
  const RegionDef& r = *pial.find("precuneus");
  EXPECT_NE(pial.mesh_path(r, Side::kLeft), inflated.mesh_path(r, Side::kLeft));
  try {
    load_atlas("no_such_atlas", dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "unknown_atlas");
    EXPECT_EQ(e.kind(), ErrorKind::kConfig);
  }
  EXPECT_THROW(load_atlas("../etc", dir.path()), Error);
}

TEST(Atlas, CustomAtlasFromAssetRoot) {
  TempDir dir;
  std::filesystem::create_directories(dir / "mini");
  testing::write_text(dir / "mini" / "atlas.tsv",
                      "blob\tleft\tcortical\tblob\nnub\tmidline\tsubcortical\tnub\n");
  testing::write_text(dir / "mini" / "aliases.tsv", "big blob\tblob\n");
  write_fixture_assets(dir.path(), 1, {"mini"});
  const Atlas mini = load_atlas("mini", dir.path());
  EXPECT_EQ(mini.regions().size(), 2u);
  EXPECT_EQ(resolve_region(mini, "Big Blob").canonical_name, "blob");
  EXPECT_TRUE(std::filesystem::exists(dir / "mini" / "lh.blob.pial.obj"));
  EXPECT_TRUE(std::filesystem::exists(dir / "mini" / "nub.obj"));
}

TEST(Atlas, CustomMapping) {
  const Atlas dk = read_atlas_definition("desikan_killiany", {});
  const Atlas mapped = apply_custom_mapping(dk, {{"HC", "Hippocampus"}});
  EXPECT_EQ(resolve_region(mapped, "hc").canonical_name, "hippocampus");
  EXPECT_EQ(mapped.regions(), dk.regions());
  try {
    apply_custom_mapping(dk, {{"x", "nowhere"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "mapping_target_not_found");
  }
  try {
    apply_custom_mapping(dk, {{"precuneus", "hippocampus"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "mapping_collision");
  }
}

}  // namespace
}  // namespace brainpaint

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


#include "brainpaint/pipeline.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <set>

#include "brainpaint/error.hpp"
#include "brainpaint/hash.hpp"
#include "brainpaint/png.hpp"
#include "test_data.hpp"

namespace brainpaint {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

RunConfig small_config(const fs::path& out) {
  RunConfig c;
  c.asset_root = testing::shared_fixture_assets();
  c.output_dir = out;
  c.width = 96;
  c.height = 72;
  return c;
}

std::set<std::string> listing(const fs::path& dir) {
  std::set<std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) out.insert(e.path().filename().string());
  return out;
}

Error run_error(const RunConfig& c, std::string_view csv) {
  try {
    run_pipeline_text(c, csv);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "run succeeded";
  return Error(ErrorKind::kIo, "none", "none");
}

TEST(SanitizeName, ReplacesUnsafeCharacters) {
  EXPECT_EQ(sanitize_image_name("Brain 1"), "Brain_1");
  EXPECT_EQ(sanitize_image_name("a/b\\c.d-e_f"), "a_b_c_d-e_f");
  EXPECT_EQ(sanitize_image_name("\xC3\xA9t\xC3\xA9"), "__t__");
}

TEST(Pipeline, TwoBrainTableProducesSixImages) {
  TempDir tmp;
  const RunConfig c = small_config(tmp / "out");
  const RunManifest m = run_pipeline_text(c, testing::kTwoBrainCsv);
  ASSERT_EQ(m.images.size(), 6u);
  const auto views = default_views();
  std::set<std::string> expected{"manifest.json"};
  for (std::size_t i = 0; i < 6; ++i) {
    const OutputImage& img = m.images[i];
    EXPECT_EQ(img.row, i / 3);
    EXPECT_EQ(img.view, views[i % 3]);
    EXPECT_EQ(img.image_name, i < 3 ? "Brain 1" : "Brain 2");
    EXPECT_EQ(img.file, sanitize_image_name(img.image_name) + "_" + to_string(img.view) + ".png");
    const std::string bytes = testing::read_text(tmp / "out" / img.file);
    EXPECT_EQ(sha256_hex(bytes), img.sha256);
    const ImageBuffer decoded = decode_png(bytes);
    EXPECT_EQ(decoded.width(), 96);
    EXPECT_EQ(decoded.height(), 72);
    expected.insert(img.file);
  }
  EXPECT_EQ(listing(tmp / "out"), expected);
  EXPECT_FALSE(m.animation.has_value());
  EXPECT_FALSE(m.warnings.empty());
  EXPECT_EQ(m.warnings.front().code, "missing_region");
  EXPECT_EQ(parse_config(m.config_json), c);

  const auto j = nlohmann::json::parse(testing::read_text(tmp / "out/manifest.json"));
  EXPECT_EQ(testing::read_text(tmp / "out/manifest.json"), to_json(m));
  ASSERT_EQ(j.at("images").size(), 6u);
  EXPECT_EQ(j.at("images")[4].at("file"), "Brain_2_cortical_back.png");
  EXPECT_EQ(j.at("images")[4].at("row"), 1);
  EXPECT_EQ(j.at("images")[4].at("view"), "cortical_back");
  EXPECT_EQ(j.at("images")[4].at("image_name"), "Brain 2");
  EXPECT_TRUE(j.at("animation").is_null());
  EXPECT_EQ(j.at("config").at("atlas"), "desikan_killiany");
  EXPECT_EQ(j.at("warnings")[0].at("code"), "missing_region");
}

TEST(Pipeline, IndependentOfJobCount) {
  TempDir tmp;
  RunConfig c = small_config(tmp / "a");
  c.animation = AnimationConfig{2, 8.0};
  const RunManifest a = run_pipeline_text(c, testing::kTwoBrainCsv, {1, true, true});
  c.output_dir = tmp / "b";
  const RunManifest b = run_pipeline_text(c, testing::kTwoBrainCsv, {4, true, true});
  EXPECT_EQ(a.images, b.images);
  EXPECT_EQ(a.animation, b.animation);
  EXPECT_EQ(a.warnings, b.warnings);
  EXPECT_EQ(listing(tmp / "a"), listing(tmp / "b"));
  for (const std::string& f : listing(tmp / "a")) {
    if (f == "manifest.json") continue;
    EXPECT_EQ(testing::read_text(tmp / "a" / f), testing::read_text(tmp / "b" / f)) << f;
  }
}

TEST(Pipeline, AnimationOnly) {
  TempDir tmp;
  RunConfig c = small_config(tmp / "out");
  c.animation = AnimationConfig{3, 10.0};
  c.views = {ViewPreset::kCorticalFront};
  const RunManifest m = run_pipeline_text(c, testing::kTwoBrainCsv, {1, false, true});
  EXPECT_TRUE(m.images.empty());
  ASSERT_TRUE(m.animation.has_value());
  EXPECT_EQ(m.animation->frames.size(), 4u);
  std::set<std::string> expected{"manifest.json"};
  for (const auto& f : m.animation->frames) expected.insert(f.file);
  EXPECT_EQ(listing(tmp / "out"), expected);
  const auto j = nlohmann::json::parse(testing::read_text(tmp / "out/manifest.json"));
  EXPECT_EQ(j.at("animation").at("frames").size(), 4u);
}

TEST(Pipeline, FailedRunLeavesOutputUntouched) {
  TempDir tmp;
  const RunConfig c = small_config(tmp / "out");
  testing::write_text(tmp / "out/keep.txt", "keep");
  const Error bad_cell = run_error(c, "id,hippocampus\nx,abc\n");
  EXPECT_EQ(bad_cell.code(), "non_numeric_value");
  EXPECT_EQ(listing(tmp / "out"), (std::set<std::string>{"keep.txt"}));

  // A mesh that only fails once rendering is under way.
  const fs::path assets = tmp / "assets";
  fs::copy(testing::shared_fixture_assets(), assets, fs::copy_options::recursive);
  testing::write_text(assets / "desikan_killiany/lh.hippocampus.obj", "v 0 0 0\nf 1 2 3\n");
  RunConfig broken = c;
  broken.asset_root = assets;
  EXPECT_EQ(run_error(broken, testing::kTwoBrainCsv).kind(), ErrorKind::kInput);
  EXPECT_EQ(listing(tmp / "out"), (std::set<std::string>{"keep.txt"}));
  EXPECT_EQ(listing(tmp.path()), (std::set<std::string>{"assets", "out"}));
}

TEST(Pipeline, ExistingOutputDirectoryIsMergedInto) {
  TempDir tmp;
  const RunConfig c = small_config(tmp / "out");
  testing::write_text(tmp / "out/keep.txt", "keep");
  run_pipeline_text(c, testing::kTwoBrainCsv);
  const auto files = listing(tmp / "out");
  EXPECT_EQ(files.size(), 8u);
  EXPECT_TRUE(files.count("keep.txt"));
  EXPECT_EQ(listing(tmp.path()), (std::set<std::string>{"out"}));
}

TEST(Pipeline, InputErrors) {
  TempDir tmp;
  RunConfig c = small_config(tmp / "out");
  const Error collision = run_error(c, "id,hippocampus\nBrain 1,1\nBrain_1,2\n");
  EXPECT_EQ(collision.kind(), ErrorKind::kInput);
  EXPECT_EQ(collision.code(), "output_name_collision");
  ASSERT_FALSE(collision.details().empty());
  EXPECT_EQ(collision.details()[0].row, 3);

  c.exclude = {"nowhere"};
  EXPECT_EQ(run_error(c, testing::kTwoBrainCsv).code(), "unknown_exclusion");
  c.exclude.clear();
  c.atlas = "no_such_atlas";
  EXPECT_NE(run_error(c, testing::kTwoBrainCsv).kind(), ErrorKind::kRender);
  EXPECT_FALSE(fs::exists(tmp / "out"));
  try {
    run_pipeline(small_config(tmp / "out"), tmp / "missing.csv");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(Pipeline, MappingAndRangeWarnings) {
  TempDir tmp;
  RunConfig c = small_config(tmp / "out");
  c.region_mapping = {{"HC left", "hippocampus"}};
  c.views = {ViewPreset::kSubcorticalFront};
  const PreparedRun p = prepare_run(c, "id,HC left\nr,5\n");
  EXPECT_EQ(p.table.region_order, (std::vector<std::string>{"hippocampus"}));
  bool saw_range = false;
  for (const auto& w : p.warnings) {
    if (w.code == "value_out_of_range") {
      saw_range = true;
      EXPECT_EQ(w.row, 2);
      EXPECT_EQ(w.column, 2);
    }
  }
  EXPECT_TRUE(saw_range);
  EXPECT_EQ(run_pipeline_text(c, "id,HC left\nr,5\n").images.size(), 1u);
}

}  // namespace
}  // namespace brainpaint

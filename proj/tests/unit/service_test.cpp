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


#include "brainpaint/service.hpp"

#include <gtest/gtest.h>
#include <httplib.h>

#include <nlohmann/json.hpp>
#include <set>
#include <thread>

#include "brainpaint/archive.hpp"
#include "brainpaint/error.hpp"
#include "brainpaint/hash.hpp"
#include "test_data.hpp"

namespace brainpaint {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using testing::TempDir;

constexpr const char* kSmall = R"({"resolution": [96, 72]})";

ServiceOptions options_for(const TempDir& tmp) {
  ServiceOptions o;
  o.port = 0;
  o.data_dir = tmp / "data";
  o.asset_root = testing::shared_fixture_assets();
  return o;
}

httplib::Result submit(httplib::Client& cli, const std::string& csv, const std::string& config = kSmall,
                       bool validate_only = false) {
  httplib::MultipartFormDataItems items = {{"csv", csv, "input.csv", "text/csv"},
                                           {"config", config, "config.json", "application/json"}};
  if (validate_only) items.push_back({"validate_only", "true", "", ""});
  return cli.Post("/api/render", items);
}

json body_of(const httplib::Result& r) { return json::parse(r->body); }

json wait_finished(httplib::Client& cli, const std::string& id) {
  for (int i = 0; i < 1200; ++i) {
    auto r = cli.Get("/api/jobs/" + id);
    if (!r || r->status != 200) return json();
    json j = json::parse(r->body);
    if (j.at("state") == "done" || j.at("state") == "failed") return j;
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  return json();
}

std::string submit_ok(httplib::Client& cli, const std::string& csv, const std::string& config = kSmall) {
  auto r = submit(cli, csv, config);
  EXPECT_TRUE(r);
  if (!r) return {};
  EXPECT_EQ(r->status, 202) << r->body;
  return body_of(r).value("job_id", "");
}

TEST(Service, RenderJobLifecycle) {
  TempDir tmp;
  Service service(options_for(tmp));
  httplib::Client cli("127.0.0.1", service.start());
  EXPECT_EQ(cli.Get("/healthz")->status, 200);

  const std::string id = submit_ok(cli, testing::kTwoBrainCsv);
  ASSERT_EQ(id.size(), 32u);
  EXPECT_EQ(id.find_first_not_of("0123456789abcdef"), std::string::npos);
  const json status = wait_finished(cli, id);
  ASSERT_EQ(status.at("state"), "done") << status.dump();
  EXPECT_EQ(status.at("job_id"), id);
  EXPECT_GT(status.at("expires_at").get<std::int64_t>(), status.at("created_at").get<std::int64_t>());
  ASSERT_EQ(status.at("images").size(), 6u);
  const json& manifest = status.at("manifest");

  auto archive = cli.Get("/api/jobs/" + id + "/archive");
  ASSERT_EQ(archive->status, 200);
  EXPECT_EQ(archive->get_header_value("Content-Type"), "application/zip");
  const auto entries = read_zip(archive->body);
  std::set<std::string> names;
  for (const auto& e : entries) names.insert(e.name);
  EXPECT_EQ(names.size(), 7u);
  EXPECT_TRUE(names.count("manifest.json"));
  for (const json& img : manifest.at("images")) {
    const std::string file = img.at("file");
    auto it = std::find_if(entries.begin(), entries.end(), [&](const ArchiveEntry& e) { return e.name == file; });
    ASSERT_NE(it, entries.end()) << file;
    EXPECT_EQ(sha256_hex(it->data), img.at("sha256"));
    auto png = cli.Get("/api/jobs/" + id + "/images/" + file);
    ASSERT_EQ(png->status, 200);
    EXPECT_EQ(png->body, it->data);
  }
  EXPECT_EQ(cli.Get("/api/jobs/" + id + "/images/manifest.json")->status, 404);
  EXPECT_EQ(cli.Get("/api/jobs/" + id + "/images/nope.png")->status, 404);
  // Server paths win over the uploaded ones.
  const json j = json::parse(json(manifest.at("config")).dump());
  EXPECT_EQ(j.at("asset_root"), testing::shared_fixture_assets().generic_string());
  EXPECT_TRUE(fs::exists(tmp / "data/jobs" / id / "job.json"));
}

TEST(Service, UploadedPathsAreIgnored) {
  TempDir tmp;
  Service service(options_for(tmp));
  httplib::Client cli("127.0.0.1", service.start());
  const std::string id = submit_ok(
      cli, testing::kTwoBrainCsv,
      R"({"resolution": [64, 48], "asset_root": "/nonexistent", "output_dir": "/tmp/elsewhere", "views": ["cortical_lateral"]})");
  const json status = wait_finished(cli, id);
  EXPECT_EQ(status.at("state"), "done") << status.dump();
  EXPECT_EQ(status.at("images").size(), 2u);
  EXPECT_TRUE(fs::exists(tmp / "data/jobs" / id / "output/Brain_1_cortical_lateral.png"));
}

TEST(Service, InputErrorsAreReportedWithDetails) {
  TempDir tmp;
  Service service(options_for(tmp));
  httplib::Client cli("127.0.0.1", service.start());

  auto typo = submit(cli, "id,Hipocampus\nx,1\n");
  ASSERT_EQ(typo->status, 400);
  json j = body_of(typo);
  EXPECT_EQ(j.at("code"), "unresolved_region");
  bool suggested = false;
  for (const json& d : j.at("details")) {
    if (d.at("code") == "suggestion" && d.at("message") == "hippocampus") suggested = true;
    if (d.at("code") == "unresolved_region") {
      EXPECT_EQ(d.at("row"), 1);
      EXPECT_EQ(d.at("column"), 2);
    }
  }
  EXPECT_TRUE(suggested) << j.dump();

  auto bad_cell = submit(cli, "id,hippocampus\nx,abc\n");
  ASSERT_EQ(bad_cell->status, 400);
  EXPECT_EQ(body_of(bad_cell).at("code"), "non_numeric_value");

  auto bad_config = submit(cli, testing::kTwoBrainCsv, R"({"colour": "red"})");
  ASSERT_EQ(bad_config->status, 400);
  EXPECT_EQ(body_of(bad_config).at("code"), "unknown_key");

  auto no_csv = cli.Post("/api/render", httplib::MultipartFormDataItems{{"config", "{}", "", ""}});
  ASSERT_EQ(no_csv->status, 400);
  EXPECT_EQ(body_of(no_csv).at("code"), "missing_csv");

  auto not_multipart = cli.Post("/api/render", "{}", "application/json");
  ASSERT_EQ(not_multipart->status, 400);
  EXPECT_EQ(body_of(not_multipart).at("code"), "expected_multipart");
  EXPECT_TRUE(fs::is_empty(tmp / "data/jobs"));
}

TEST(Service, ValidateOnly) {
  TempDir tmp;
  Service service(options_for(tmp));
  httplib::Client cli("127.0.0.1", service.start());
  auto r = submit(cli, testing::kTwoBrainCsv, kSmall, true);
  ASSERT_EQ(r->status, 200);
  const json j = body_of(r);
  EXPECT_EQ(j.at("valid"), true);
  EXPECT_EQ(j.at("rows"), 2);
  EXPECT_EQ(j.at("image_names"), json({"Brain 1", "Brain 2"}));
  EXPECT_EQ(j.at("regions"), json({"hippocampus", "inferior_temporal", "superior_parietal"}));
  EXPECT_FALSE(j.at("missing_regions").empty());
  EXPECT_EQ(j.at("warnings")[0].at("severity"), "WARN");
  EXPECT_TRUE(fs::is_empty(tmp / "data/jobs"));
}

TEST(Service, SizeLimits) {
  TempDir tmp;
  ServiceOptions o = options_for(tmp);
  o.max_csv_bytes = 2048;
  Service service(o);
  httplib::Client cli("127.0.0.1", service.start());
  std::string csv = "id,hippocampus\n";
  while (csv.size() <= 2048) csv += "row" + std::to_string(csv.size()) + ",1\n";
  auto over = submit(cli, csv);
  ASSERT_EQ(over->status, 413);
  EXPECT_EQ(body_of(over).at("code"), "payload_too_large");
  auto huge = submit(cli, std::string((2u << 20), 'x'));
  ASSERT_TRUE(huge);
  EXPECT_EQ(huge->status, 413);
  EXPECT_EQ(body_of(huge).at("code"), "payload_too_large");
}

TEST(Service, UnknownJobsAndQueuePolicy) {
  TempDir tmp;
  ServiceOptions o = options_for(tmp);
  o.queue_capacity = 1;
  Service service(o);
  httplib::Client cli("127.0.0.1", service.start());
  EXPECT_EQ(cli.Get("/api/jobs/0123456789abcdef0123456789abcdef")->status, 404);
  EXPECT_EQ(cli.Get("/api/jobs/../../etc")->status, 404);
  EXPECT_EQ(body_of(cli.Get("/api/jobs/xyz/archive")).at("code"), "unknown_job");

  // One slow job occupies the worker; the next waits in the queue.
  const std::string slow = R"({"resolution": [1200, 900], "supersample": 3})";
  const std::string first = submit_ok(cli, testing::kTwoBrainCsv, slow);
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  const std::string second = submit_ok(cli, testing::kTwoBrainCsv, slow);
  auto busy = cli.Get("/api/jobs/" + second + "/archive");
  EXPECT_EQ(busy->status, 409);
  EXPECT_EQ(body_of(busy).at("code"), "job_not_done");
  auto full = submit(cli, testing::kTwoBrainCsv, slow);
  EXPECT_EQ(full->status, 429);
  EXPECT_EQ(body_of(full).at("code"), "queue_full");
  EXPECT_EQ(wait_finished(cli, first).at("state"), "done");
  EXPECT_EQ(wait_finished(cli, second).at("state"), "done");
}

TEST(Service, CatalogueEndpoints) {
  TempDir tmp;
  Service service(options_for(tmp));
  httplib::Client cli("127.0.0.1", service.start());
  const json atlases = body_of(cli.Get("/api/atlases"));
  bool found = false;
  for (const json& a : atlases.at("atlases")) {
    if (a.at("name") != "desikan_killiany") continue;
    EXPECT_EQ(a.at("available_surfaces"), json({"pial", "inflated"}));
    for (const json& r : a.at("regions")) {
      if (r.at("name") == "hippocampus") {
        found = true;
        EXPECT_EQ(r.at("class"), "subcortical");
      }
    }
  }
  EXPECT_TRUE(found);
  const json presets = body_of(cli.Get("/api/presets"));
  EXPECT_EQ(presets.at("gradients").at("default"), json({"#ffffff", "#ffff00", "#ffa500", "#ff0000"}));
  EXPECT_EQ(presets.at("views").size(), 5u);
  EXPECT_EQ(presets.at("default_views"), json({"cortical_front", "cortical_back", "subcortical_front"}));
  EXPECT_FALSE(presets.at("config_defaults").contains("asset_root"));
  EXPECT_EQ(presets.at("named_colors").at("red"), "#ff0000");
  EXPECT_EQ(cli.Get("/no/such/route")->status, 404);
}

TEST(Service, JobsSurviveRestart) {
  TempDir tmp;
  std::string done_id;
  {
    Service service(options_for(tmp));
    httplib::Client cli("127.0.0.1", service.start());
    done_id = submit_ok(cli, testing::kTwoBrainCsv);
    ASSERT_EQ(wait_finished(cli, done_id).at("state"), "done");
  }
  // A job interrupted mid-render is queued again.
  const std::string interrupted = "00112233445566778899aabbccddeeff";
  fs::copy(tmp / "data/jobs" / done_id, tmp / "data/jobs" / interrupted, fs::copy_options::recursive);
  fs::remove_all(tmp / "data/jobs" / interrupted / "output");
  json record = json::parse(testing::read_text(tmp / "data/jobs" / interrupted / "job.json"));
  record["id"] = interrupted;
  record["state"] = "running";
  testing::write_text(tmp / "data/jobs" / interrupted / "job.json", record.dump());
  // Expired records are dropped on load.
  const std::string stale = "ffeeddccbbaa99887766554433221100";
  fs::copy(tmp / "data/jobs" / done_id, tmp / "data/jobs" / stale, fs::copy_options::recursive);
  record["id"] = stale;
  record["state"] = "done";
  record["expires_ms"] = 1000;
  testing::write_text(tmp / "data/jobs" / stale / "job.json", record.dump());

  Service service(options_for(tmp));
  httplib::Client cli("127.0.0.1", service.start());
  EXPECT_FALSE(fs::exists(tmp / "data/jobs" / stale));
  EXPECT_EQ(cli.Get("/api/jobs/" + stale)->status, 404);
  const json reloaded = wait_finished(cli, done_id);
  EXPECT_EQ(reloaded.at("state"), "done");
  EXPECT_EQ(cli.Get("/api/jobs/" + done_id + "/archive")->status, 200);
  const json resumed = wait_finished(cli, interrupted);
  ASSERT_EQ(resumed.at("state"), "done");
  EXPECT_EQ(resumed.at("manifest").at("images"), reloaded.at("manifest").at("images"));
}

TEST(Service, ExpiredJobsArePurged) {
  TempDir tmp;
  ServiceOptions o = options_for(tmp);
  o.retention = std::chrono::seconds(1);
  Service service(o);
  httplib::Client cli("127.0.0.1", service.start());
  const std::string id = submit_ok(cli, testing::kTwoBrainCsv);
  ASSERT_EQ(wait_finished(cli, id).at("state"), "done");
  std::this_thread::sleep_for(std::chrono::milliseconds(1200));
  EXPECT_EQ(cli.Get("/api/jobs/" + id)->status, 404);
  EXPECT_EQ(cli.Get("/api/jobs/" + id + "/archive")->status, 404);
  service.purge_expired();
  EXPECT_FALSE(fs::exists(tmp / "data/jobs" / id));
}

TEST(Service, FailedJobReportsError) {
  TempDir tmp;
  TempDir assets;
  fs::copy(testing::shared_fixture_assets(), assets.path(), fs::copy_options::recursive);
  testing::write_text(assets / "desikan_killiany/lh.hippocampus.obj", "v 0 0 0\nf 1 2 3\n");
  ServiceOptions o = options_for(tmp);
  o.asset_root = assets.path();
  Service service(o);
  httplib::Client cli("127.0.0.1", service.start());
  const std::string id = submit_ok(cli, testing::kTwoBrainCsv);
  const json status = wait_finished(cli, id);
  ASSERT_EQ(status.at("state"), "failed");
  EXPECT_EQ(status.at("error").at("code"), "malformed_obj");
  EXPECT_EQ(cli.Get("/api/jobs/" + id + "/archive")->status, 409);
}

TEST(ServiceEnvironment, Overrides) {
  const std::map<std::string, std::string> env = {{"BRAINPAINT_ADDR", "0.0.0.0:9090"},
                                                  {"BRAINPAINT_RETENTION_SECS", "60"},
                                                  {"BRAINPAINT_DATA_DIR", "/var/bp"},
                                                  {"BRAINPAINT_ASSET_ROOT", "/srv/assets"},
                                                  {"BRAINPAINT_WORKERS", "3"}};
  const ServiceOptions o = apply_environment({}, [&](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_EQ(o.host, "0.0.0.0");
  EXPECT_EQ(o.port, 9090);
  EXPECT_EQ(o.retention, std::chrono::seconds(60));
  EXPECT_EQ(o.data_dir, "/var/bp");
  EXPECT_EQ(o.asset_root, "/srv/assets");
  EXPECT_EQ(o.workers, 3);
  const ServiceOptions unchanged = apply_environment({}, [](const char*) -> const char* { return nullptr; });
  EXPECT_EQ(unchanged.port, 8080);
  for (const char* bad : {"nohost", "host:0", "host:70000", "host:x"}) {
    EXPECT_THROW(apply_environment({}, [&](const char* n) -> const char* {
                   return std::string(n) == "BRAINPAINT_ADDR" ? bad : nullptr;
                 }),
                 Error)
        << bad;
  }
}

}  // namespace
}  // namespace brainpaint

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

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <condition_variable>
#include <deque>
#include <map>
#include <mutex>
#include <random>
#include <regex>
#include <set>
#include <stop_token>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "brainpaint/archive.hpp"
#include "brainpaint/config.hpp"
#include "brainpaint/error.hpp"
#include "brainpaint/pipeline.hpp"
#include "json_util.hpp"
#include "text_util.hpp"

namespace brainpaint {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class JobState { kQueued, kRunning, kDone, kFailed };

const char* to_string(JobState s) {
  switch (s) {
    case JobState::kQueued:
      return "queued";
    case JobState::kRunning:
      return "running";
    case JobState::kDone:
      return "done";
    case JobState::kFailed:
      return "failed";
  }
  return "?";
}

std::optional<JobState> parse_job_state(const std::string& s) {
  if (s == "queued") return JobState::kQueued;
  if (s == "running") return JobState::kRunning;
  if (s == "done") return JobState::kDone;
  if (s == "failed") return JobState::kFailed;
  return std::nullopt;
}

std::int64_t now_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string new_job_id() {
  static std::mutex mutex;
  static std::random_device rd;
  std::lock_guard lock(mutex);
  std::uniform_int_distribution<std::uint64_t> dist;
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(dist(rd)),
                static_cast<unsigned long long>(dist(rd)));
  return buf;
}

bool valid_job_id(const std::string& id) {
  return id.size() == 32 && std::all_of(id.begin(), id.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

json error_body(const std::string& code, const std::string& message, const Diagnostics& details = {}) {
  return {{"code", code}, {"message", message}, {"details", detail::diagnostics_json(details)}};
}

json error_body(const Error& e) { return error_body(e.code(), e.what(), e.details()); }

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", "application/json");
}

struct Job {
  std::string id;
  JobState state = JobState::kQueued;
  std::int64_t created_ms = 0;
  std::int64_t expires_ms = 0;
  std::optional<json> error;
};

}  // namespace

ServiceOptions apply_environment(ServiceOptions options,
                                 const std::function<const char*(const char*)>& lookup) {
  auto bad = [](const std::string& name, const std::string& value, const std::string& why) {
    return Error(ErrorKind::kConfig, "invalid_environment", name + "='" + value + "': " + why);
  };
  auto parse_positive = [&](const char* name, const std::string& value) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size() || v < 1) {
      throw bad(name, value, "expected a positive integer");
    }
    return v;
  };
  if (const char* addr = lookup("BRAINPAINT_ADDR")) {
    const std::string value = addr;
    const auto colon = value.rfind(':');
    if (colon == std::string::npos) throw bad("BRAINPAINT_ADDR", value, "expected host:port");
    const long long port = parse_positive("BRAINPAINT_ADDR", value.substr(colon + 1));
    if (port > 65535) throw bad("BRAINPAINT_ADDR", value, "port out of range");
    if (colon > 0) options.host = value.substr(0, colon);
    options.port = static_cast<int>(port);
  }
  if (const char* secs = lookup("BRAINPAINT_RETENTION_SECS")) {
    options.retention = std::chrono::seconds(parse_positive("BRAINPAINT_RETENTION_SECS", secs));
  }
  if (const char* dir = lookup("BRAINPAINT_DATA_DIR"); dir && *dir) options.data_dir = dir;
  if (const char* dir = lookup("BRAINPAINT_ASSET_ROOT"); dir && *dir) options.asset_root = dir;
  if (const char* workers = lookup("BRAINPAINT_WORKERS")) {
    options.workers = static_cast<int>(std::min(64LL, parse_positive("BRAINPAINT_WORKERS", workers)));
  }
  return options;
}

struct Service::Impl {
  explicit Impl(ServiceOptions o) : options(std::move(o)) {}

  ServiceOptions options;
  httplib::Server server;
  std::mutex mutex;
  std::condition_variable_any queue_cv;
  std::map<std::string, Job> jobs;
  std::deque<std::string> queue;
  std::vector<std::jthread> workers;
  std::jthread janitor;
  std::jthread listener;
  std::mutex stop_mutex;
  std::condition_variable stop_cv;
  bool stopped = false;
  bool started = false;

  fs::path jobs_dir() const { return options.data_dir / "jobs"; }
  fs::path job_dir(const std::string& id) const { return jobs_dir() / id; }
  fs::path output_dir(const std::string& id) const { return job_dir(id) / "output"; }

  // Called with `mutex` held or before threads start.
  void persist(const Job& job) {
    json doc = {{"id", job.id},
                {"state", to_string(job.state)},
                {"created_ms", job.created_ms},
                {"expires_ms", job.expires_ms}};
    doc["error"] = job.error ? *job.error : json(nullptr);
    const fs::path tmp = job_dir(job.id) / "job.json.tmp";
    detail::write_file(tmp, doc.dump(2) + "\n");
    fs::rename(tmp, job_dir(job.id) / "job.json");
  }

  void reload() {
    std::error_code ec;
    fs::create_directories(jobs_dir(), ec);
    if (ec) {
      throw Error(ErrorKind::kIo, "io_error",
                  "cannot create data directory " + jobs_dir().string() + ": " + ec.message());
    }
    std::vector<Job> pending;
    for (const auto& entry : fs::directory_iterator(jobs_dir())) {
      const std::string id = entry.path().filename().string();
      if (!entry.is_directory() || !valid_job_id(id)) continue;
      Job job;
      try {
        const json doc = json::parse(detail::read_file(entry.path() / "job.json"));
        job.id = doc.at("id").get<std::string>();
        auto state = parse_job_state(doc.at("state").get<std::string>());
        if (job.id != id || !state) throw std::runtime_error("inconsistent job record");
        job.state = *state;
        job.created_ms = doc.at("created_ms").get<std::int64_t>();
        job.expires_ms = doc.at("expires_ms").get<std::int64_t>();
        if (!doc.at("error").is_null()) job.error = doc.at("error");
      } catch (const std::exception&) {
        fs::remove_all(entry.path(), ec);
        continue;
      }
      if (job.expires_ms <= now_ms()) {
        fs::remove_all(entry.path(), ec);
        continue;
      }
      if (job.state == JobState::kRunning) {
        job.state = JobState::kQueued;
        fs::remove_all(output_dir(id), ec);
      }
      pending.push_back(job);
    }
    std::sort(pending.begin(), pending.end(),
              [](const Job& a, const Job& b) { return a.created_ms < b.created_ms; });
    for (Job& job : pending) {
      if (job.state == JobState::kQueued) queue.push_back(job.id);
      persist(job);
      jobs[job.id] = std::move(job);
    }
  }

  void run_job(const std::string& id) {
    std::optional<json> error;
    try {
      RunConfig config = parse_config(detail::read_file(job_dir(id) / "config.json"));
      config.asset_root = options.asset_root;
      config.output_dir = output_dir(id);
      RunOptions run;
      run.jobs = options.render_jobs;
      run_pipeline(config, job_dir(id) / "input.csv", run);
    } catch (const Error& e) {
      error = error_body(e);
    } catch (const std::exception& e) {
      error = error_body("internal_error", e.what());
    }
    std::lock_guard lock(mutex);
    auto it = jobs.find(id);
    if (it == jobs.end()) return;
    it->second.state = error ? JobState::kFailed : JobState::kDone;
    it->second.error = error;
    try {
      persist(it->second);
    } catch (const std::exception&) {
    }
  }

  void worker_loop(std::stop_token stop) {
    for (;;) {
      std::string id;
      {
        std::unique_lock lock(mutex);
        if (!queue_cv.wait(lock, stop, [&] { return !queue.empty(); })) return;
        id = queue.front();
        queue.pop_front();
        auto it = jobs.find(id);
        if (it == jobs.end()) continue;
        it->second.state = JobState::kRunning;
        try {
          persist(it->second);
        } catch (const std::exception&) {
        }
      }
      run_job(id);
    }
  }

  void purge_expired() {
    std::vector<std::string> doomed;
    {
      std::lock_guard lock(mutex);
      const std::int64_t now = now_ms();
      for (auto it = jobs.begin(); it != jobs.end();) {
        if (it->second.expires_ms <= now && it->second.state != JobState::kRunning) {
          doomed.push_back(it->first);
          std::erase(queue, it->first);
          it = jobs.erase(it);
        } else {
          ++it;
        }
      }
    }
    for (const std::string& id : doomed) {
      std::error_code ec;
      fs::remove_all(job_dir(id), ec);
    }
  }

  void janitor_loop(std::stop_token stop) {
    const auto interval = std::clamp<std::chrono::milliseconds>(
        std::chrono::duration_cast<std::chrono::milliseconds>(options.retention) / 2,
        std::chrono::milliseconds(500), std::chrono::milliseconds(30000));
    std::mutex sleep_mutex;
    std::condition_variable_any sleep_cv;
    while (!stop.stop_requested()) {
      std::unique_lock lock(sleep_mutex);
      sleep_cv.wait_for(lock, stop, interval, [] { return false; });
      if (stop.stop_requested()) return;
      purge_expired();
    }
  }

  // Returns the job if it exists and has not expired.
  std::optional<Job> find_job(const std::string& id) {
    std::lock_guard lock(mutex);
    auto it = jobs.find(id);
    if (it == jobs.end() || it->second.expires_ms <= now_ms()) return std::nullopt;
    return it->second;
  }

  std::vector<std::string> output_files(const std::string& id) {
    std::vector<std::string> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(output_dir(id), ec)) {
      if (entry.is_regular_file()) files.push_back(entry.path().filename().string());
    }
    std::sort(files.begin(), files.end());
    return files;
  }

  void handle_render(const httplib::Request& req, httplib::Response& res) {
    if (!req.is_multipart_form_data()) {
      send_json(res, 400, error_body("expected_multipart", "POST /api/render takes multipart/form-data"));
      return;
    }
    if (!req.has_file("csv")) {
      send_json(res, 400, error_body("missing_csv", "multipart field 'csv' is required"));
      return;
    }
    const std::string csv = req.get_file_value("csv").content;
    if (csv.size() > options.max_csv_bytes) {
      send_json(res, 413, error_body("payload_too_large",
                                     "CSV exceeds " + std::to_string(options.max_csv_bytes) + " bytes"));
      return;
    }
    const std::string config_text = req.has_file("config") ? req.get_file_value("config").content : "{}";
    bool validate_only = false;
    if (req.has_file("validate_only")) {
      const std::string v = req.get_file_value("validate_only").content;
      validate_only = v == "1" || v == "true" || v == "yes";
    }

    PreparedRun prepared;
    try {
      RunConfig config = parse_config(config_text.empty() ? "{}" : config_text);
      config.asset_root = options.asset_root;
      prepared = prepare_run(config, csv);
    } catch (const Error& e) {
      send_json(res, 400, error_body(e));
      return;
    }
    if (validate_only) {
      json names = json::array();
      for (const RegionValueRow& row : prepared.table.rows) names.push_back(row.image_name);
      send_json(res, 200, {{"valid", true},
                           {"rows", prepared.table.rows.size()},
                           {"image_names", names},
                           {"regions", prepared.table.region_order},
                           {"missing_regions", prepared.table.missing_regions},
                           {"warnings", detail::diagnostics_json(prepared.warnings)}});
      return;
    }

    std::lock_guard lock(mutex);
    if (queue.size() >= options.queue_capacity) {
      send_json(res, 429, error_body("queue_full", "too many queued jobs, retry later"));
      return;
    }
    Job job;
    job.id = new_job_id();
    job.created_ms = now_ms();
    job.expires_ms = job.created_ms + std::chrono::duration_cast<std::chrono::milliseconds>(
                                          options.retention).count();
    try {
      fs::create_directories(job_dir(job.id));
      detail::write_file(job_dir(job.id) / "input.csv", csv);
      detail::write_file(job_dir(job.id) / "config.json", config_text.empty() ? "{}" : config_text);
      persist(job);
    } catch (const std::exception& e) {
      std::error_code ec;
      fs::remove_all(job_dir(job.id), ec);
      send_json(res, 500, error_body("io_error", e.what()));
      return;
    }
    queue.push_back(job.id);
    jobs[job.id] = job;
    queue_cv.notify_one();
    send_json(res, 202, {{"job_id", job.id}, {"status_url", "/api/jobs/" + job.id}});
  }

  void handle_status(const std::string& id, httplib::Response& res) {
    auto job = valid_job_id(id) ? find_job(id) : std::nullopt;
    if (!job) {
      send_json(res, 404, error_body("unknown_job", "no such job (it may have expired)"));
      return;
    }
    json body = {{"job_id", job->id},
                 {"state", to_string(job->state)},
                 {"created_at", job->created_ms / 1000},
                 {"expires_at", job->expires_ms / 1000}};
    if (job->state == JobState::kDone) {
      try {
        const json manifest = json::parse(detail::read_file(output_dir(id) / "manifest.json"));
        json images = json::array();
        for (const json& img : manifest.at("images")) images.push_back(img.at("file"));
        body["images"] = images;
        body["manifest"] = manifest;
      } catch (const std::exception& e) {
        send_json(res, 500, error_body("io_error", e.what()));
        return;
      }
    }
    if (job->error) body["error"] = *job->error;
    send_json(res, 200, body);
  }

  void handle_archive(const std::string& id, httplib::Response& res) {
    auto job = valid_job_id(id) ? find_job(id) : std::nullopt;
    if (!job) {
      send_json(res, 404, error_body("unknown_job", "no such job (it may have expired)"));
      return;
    }
    if (job->state != JobState::kDone) {
      send_json(res, 409, error_body("job_not_done", std::string("job is ") + to_string(job->state)));
      return;
    }
    try {
      std::vector<ArchiveEntry> entries;
      for (const std::string& file : output_files(id)) {
        entries.push_back({file, detail::read_file(output_dir(id) / file)});
      }
      res.status = 200;
      res.set_header("Content-Disposition", "attachment; filename=\"brainpaint-" + id + ".zip\"");
      res.set_content(write_zip(std::move(entries)), "application/zip");
    } catch (const std::exception& e) {
      send_json(res, 500, error_body("io_error", e.what()));
    }
  }

  void handle_image(const std::string& id, const std::string& file, httplib::Response& res) {
    auto job = valid_job_id(id) ? find_job(id) : std::nullopt;
    const auto files = job && job->state == JobState::kDone ? output_files(id) : std::vector<std::string>{};
    const bool png = file.size() > 4 && file.compare(file.size() - 4, 4, ".png") == 0;
    if (!png || !std::binary_search(files.begin(), files.end(), file)) {
      send_json(res, 404, error_body("unknown_image", "no such image"));
      return;
    }
    try {
      res.status = 200;
      res.set_content(detail::read_file(output_dir(id) / file), "image/png");
    } catch (const std::exception& e) {
      send_json(res, 500, error_body("io_error", e.what()));
    }
  }

  json atlases_json() {
    std::set<std::string> names;
    for (const std::string& n : builtin_atlas_names()) names.insert(n);
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(options.asset_root, ec)) {
      if (entry.is_directory() && fs::exists(entry.path() / "atlas.tsv")) {
        names.insert(entry.path().filename().string());
      }
    }
    json out = json::array();
    for (const std::string& name : names) {
      Atlas atlas;
      try {
        atlas = read_atlas_definition(name, options.asset_root);
      } catch (const Error&) {
        continue;
      }
      json surfaces = json::array();
      for (Surface s : {Surface::kPial, Surface::kInflated}) {
        try {
          load_atlas(name, options.asset_root, s);
          surfaces.push_back(to_string(s));
        } catch (const Error&) {
        }
      }
      json regions = json::array();
      for (const RegionDef& r : atlas.regions()) {
        regions.push_back({{"name", r.canonical_name},
                           {"hemisphere", to_string(r.hemisphere)},
                           {"class", to_string(r.klass)}});
      }
      out.push_back({{"name", name}, {"available_surfaces", surfaces}, {"regions", regions}});
    }
    return {{"atlases", out}};
  }

  static json presets_json() {
    const json defaults = json::parse(config_to_json(RunConfig{}));
    json views = json::array();
    for (ViewPreset v : all_view_presets()) views.push_back(to_string(v));
    json colors = json::object();
    for (const auto& [name, rgb] : named_colors()) colors[std::string(name)] = to_hex(rgb);
    json config_defaults = defaults;
    config_defaults.erase("asset_root");
    config_defaults.erase("output_dir");
    return {{"gradients", {{"default", defaults.at("gradient")}}},
            {"views", views},
            {"default_views", defaults.at("views")},
            {"surfaces", {"pial", "inflated"}},
            {"named_colors", colors},
            {"config_defaults", config_defaults}};
  }

  void install_routes() {
    server.set_payload_max_length(options.max_csv_bytes + (1u << 20));
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      const std::string code = res.status == 413 ? "payload_too_large"
                               : res.status == 404 ? "not_found"
                                                   : "http_error";
      send_json(res, res.status, error_body(code, httplib::status_message(res.status)));
    });
    server.Post("/api/render", [this](const httplib::Request& req, httplib::Response& res) {
      handle_render(req, res);
    });
    server.Get(R"(/api/jobs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      handle_status(req.matches[1], res);
    });
    server.Get(R"(/api/jobs/([^/]+)/archive)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 handle_archive(req.matches[1], res);
               });
    server.Get(R"(/api/jobs/([^/]+)/images/([^/]+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 handle_image(req.matches[1], req.matches[2], res);
               });
    server.Get("/api/atlases", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, atlases_json());
    });
    server.Get("/api/presets", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, presets_json());
    });
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("ok\n", "text/plain");
    });
    if (options.static_dir) {
      if (!server.set_mount_point("/", options.static_dir->string())) {
        throw Error(ErrorKind::kConfig, "invalid_static_dir",
                    "static directory " + options.static_dir->string() + " does not exist");
      }
    }
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Service::~Service() { stop(); }

int Service::start() {
  Impl& s = *impl_;
  if (s.started) throw Error(ErrorKind::kConfig, "already_started", "service already started");
  s.reload();
  s.install_routes();
  int port = s.options.port;
  if (port == 0) {
    port = s.server.bind_to_any_port(s.options.host);
  } else if (!s.server.bind_to_port(s.options.host, port)) {
    port = -1;
  }
  if (port <= 0) {
    throw Error(ErrorKind::kIo, "bind_failed",
                "cannot listen on " + s.options.host + ":" + std::to_string(s.options.port));
  }
  s.started = true;
  for (int i = 0; i < std::max(1, s.options.workers); ++i) {
    s.workers.emplace_back([&s](std::stop_token stop) { s.worker_loop(stop); });
  }
  s.janitor = std::jthread([&s](std::stop_token stop) { s.janitor_loop(stop); });
  s.listener = std::jthread([&s] { s.server.listen_after_bind(); });
  s.server.wait_until_ready();
  return port;
}

void Service::wait() {
  std::unique_lock lock(impl_->stop_mutex);
  impl_->stop_cv.wait(lock, [&] { return impl_->stopped; });
}

void Service::stop() {
  Impl& s = *impl_;
  {
    std::lock_guard lock(s.stop_mutex);
    if (s.stopped) return;
    s.stopped = true;
  }
  if (s.started) {
    s.server.stop();
    if (s.listener.joinable()) s.listener.join();
    for (auto& w : s.workers) w.request_stop();
    s.workers.clear();
    s.janitor.request_stop();
    if (s.janitor.joinable()) s.janitor.join();
  }
  s.stop_cv.notify_all();
}

void Service::purge_expired() { impl_->purge_expired(); }

}  // namespace brainpaint

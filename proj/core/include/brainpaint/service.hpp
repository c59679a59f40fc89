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

#include <chrono>
#include <cstdlib>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace brainpaint {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  /// 0 picks a free port; Service::start returns the one bound.
  int port = 8080;
  /// Jobs live in <data_dir>/jobs/<id>/.
  std::filesystem::path data_dir = "brainpaint-data";
  std::filesystem::path asset_root = "assets";
  /// Served under / when set (the built web UI).
  std::optional<std::filesystem::path> static_dir;
  int workers = 1;
  /// Render threads per job.
  int render_jobs = 1;
  /// Queued (not yet running) jobs beyond this get 429.
  std::size_t queue_capacity = 16;
  std::size_t max_csv_bytes = 5u << 20;
  std::chrono::seconds retention{3600};
};

/// Applies BRAINPAINT_ADDR ("host:port"), BRAINPAINT_RETENTION_SECS,
/// BRAINPAINT_DATA_DIR, BRAINPAINT_ASSET_ROOT and BRAINPAINT_WORKERS.
/// `lookup` returns nullptr for unset variables. Throws Error(kConfig).
ServiceOptions apply_environment(
    ServiceOptions options,
    const std::function<const char*(const char*)>& lookup = [](const char* name) {
      return static_cast<const char*>(std::getenv(name));
    });

/// Asynchronous render service.
///
///   POST /api/render             multipart: csv (file), config (JSON text,
///                                optional), validate_only (optional "true")
///   GET  /api/jobs/{id}          job status
///   GET  /api/jobs/{id}/archive  ZIP of images + manifest.json
///   GET  /api/jobs/{id}/images/{file}
///   GET  /api/atlases
///   GET  /api/presets
///   GET  /healthz
///
/// Errors use {"code", "message", "details": [diagnostic...]}.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Reloads jobs from the data directory, binds, and serves on background
  /// threads. Returns the bound port. Throws Error(kIo) if binding fails.
  int start();
  /// Blocks until stop() is called from another thread.
  void wait();
  void stop();

  /// Removes expired jobs now instead of waiting for the janitor.
  void purge_expired();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace brainpaint

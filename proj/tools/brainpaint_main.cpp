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


// brainpaint: render per-region biomarker values onto brain meshes.

#include <CLI11.hpp>

#include <chrono>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "brainpaint/atlas.hpp"
#include "brainpaint/config.hpp"
#include "brainpaint/error.hpp"
#include "brainpaint/mesh.hpp"
#include "brainpaint/pipeline.hpp"
#include "brainpaint/service.hpp"

namespace {

using brainpaint::Error;

brainpaint::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

void print_warnings(const brainpaint::Diagnostics& warnings) {
  for (const auto& w : warnings) std::cerr << brainpaint::format_diagnostic(w) << "\n";
}

void print_error(const Error& e) {
  std::cerr << "ERROR " << e.code() << " " << e.what() << "\n";
  for (const auto& d : e.details()) std::cerr << "  " << brainpaint::format_diagnostic(d) << "\n";
}

struct RunArgs {
  std::string config;
  std::string input;
  std::string output;
  std::string assets;
  int jobs = 1;
  int frames_per_transition = 0;
  double fps = 0.0;
};

brainpaint::RunConfig load_run_config(const RunArgs& args) {
  brainpaint::RunConfig config =
      args.config.empty() ? brainpaint::parse_config("{}") : brainpaint::load_config(args.config);
  if (!args.output.empty()) config.output_dir = args.output;
  if (!args.assets.empty()) config.asset_root = args.assets;
  return config;
}

int run_render(const RunArgs& args, bool animate) {
  brainpaint::RunConfig config = load_run_config(args);
  brainpaint::RunOptions options;
  options.jobs = args.jobs;
  if (animate) {
    options.stills = false;
    if (!config.animation) config.animation = brainpaint::AnimationConfig{};
    if (args.frames_per_transition > 0) config.animation->frames_per_transition = args.frames_per_transition;
    if (args.fps > 0.0) config.animation->fps = args.fps;
  } else {
    options.animation = config.animation.has_value();
  }
  const brainpaint::RunManifest manifest = brainpaint::run_pipeline(config, args.input, options);
  print_warnings(manifest.warnings);
  const std::size_t frames = manifest.animation ? manifest.animation->frames.size() : 0;
  std::cout << "wrote " << manifest.images.size() << " images";
  if (manifest.animation) std::cout << " and " << frames << " frames";
  std::cout << " to " << config.output_dir.string() << "\n";
  return 0;
}

int run_validate(const RunArgs& args) {
  const brainpaint::RunConfig config = load_run_config(args);
  std::string csv;
  {
    std::ifstream in(args.input, std::ios::binary);
    if (!in) throw Error(brainpaint::ErrorKind::kIo, "io_error", "cannot read " + args.input);
    csv.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  const brainpaint::PreparedRun run = brainpaint::prepare_run(config, csv);
  print_warnings(run.warnings);
  std::cout << run.table.rows.size() << " rows, " << run.table.region_order.size()
            << " regions resolved, " << run.table.missing_regions.size()
            << " atlas regions missing, " << run.warnings.size() << " warnings\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Render per-region brain biomarker values to PNG images"};
  app.require_subcommand(1);

  RunArgs render_args;
  auto add_run_options = [](CLI::App* cmd, RunArgs& args, bool output) {
    cmd->add_option("--config", args.config, "JSON configuration file (defaults when omitted)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--input", args.input, "biomarker CSV")->required()->check(CLI::ExistingFile);
    if (output) cmd->add_option("--output", args.output, "output directory (overrides output_dir)");
    cmd->add_option("--assets", args.assets, "mesh asset root (overrides asset_root)");
  };
  auto* render = app.add_subcommand("render", "render every row in every view");
  add_run_options(render, render_args, true);
  render->add_option("--jobs", render_args.jobs, "concurrent renders")->check(CLI::Range(1, 256));

  RunArgs animate_args;
  auto* animate = app.add_subcommand("animate", "render interpolated frames between rows");
  add_run_options(animate, animate_args, true);
  animate->add_option("--jobs", animate_args.jobs, "concurrent renders")->check(CLI::Range(1, 256));
  animate->add_option("--frames-per-transition", animate_args.frames_per_transition,
                      "frames per row transition (overrides the config)")
      ->check(CLI::PositiveNumber);
  animate->add_option("--fps", animate_args.fps, "frame rate recorded in the manifest")
      ->check(CLI::PositiveNumber);

  RunArgs validate_args;
  auto* validate = app.add_subcommand("validate", "parse config and CSV without rendering");
  add_run_options(validate, validate_args, false);

  std::string fixtures_out;
  std::uint64_t fixtures_seed = 1;
  std::vector<std::string> fixtures_atlases;
  auto* fixtures = app.add_subcommand("fixtures", "write procedural stand-in meshes");
  fixtures->add_option("--out", fixtures_out, "asset root to write")->required();
  fixtures->add_option("--seed", fixtures_seed, "generator seed");
  fixtures->add_option("--atlas", fixtures_atlases, "atlases to generate (default: all builtin)");

  brainpaint::ServiceOptions serve_options;
  std::string serve_addr;
  std::string serve_static;
  long long serve_retention = 0;
  auto* serve = app.add_subcommand("serve", "run the HTTP render service");
  serve->add_option("--addr", serve_addr, "host:port (default BRAINPAINT_ADDR or 127.0.0.1:8080)");
  serve->add_option("--data", serve_options.data_dir, "job data directory");
  serve->add_option("--assets", serve_options.asset_root, "mesh asset root");
  serve->add_option("--workers", serve_options.workers, "concurrent jobs")->check(CLI::Range(1, 64));
  serve->add_option("--render-jobs", serve_options.render_jobs, "render threads per job")
      ->check(CLI::Range(1, 256));
  serve->add_option("--queue", serve_options.queue_capacity, "queued jobs before 429");
  serve->add_option("--retention", serve_retention, "seconds to keep finished jobs")
      ->check(CLI::PositiveNumber);
  serve->add_option("--static", serve_static, "directory with the built web UI");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : brainpaint::exit_code_for(brainpaint::ErrorKind::kConfig);
  }

  try {
    if (*render) return run_render(render_args, false);
    if (*animate) return run_render(animate_args, true);
    if (*validate) return run_validate(validate_args);
    if (*fixtures) {
      if (fixtures_atlases.empty()) fixtures_atlases = brainpaint::builtin_atlas_names();
      const std::size_t n =
          brainpaint::write_fixture_assets(fixtures_out, fixtures_seed, fixtures_atlases);
      std::cout << "wrote " << n << " meshes to " << fixtures_out << "\n";
      return 0;
    }
    if (*serve) {
      brainpaint::ServiceOptions options = brainpaint::apply_environment({});
      options.render_jobs = serve_options.render_jobs;
      options.queue_capacity = serve_options.queue_capacity;
      if (serve->count("--data")) options.data_dir = serve_options.data_dir;
      if (serve->count("--assets")) options.asset_root = serve_options.asset_root;
      if (serve->count("--workers")) options.workers = serve_options.workers;
      if (!serve_addr.empty()) {
        options = brainpaint::apply_environment(options, [&](const char* name) -> const char* {
          return std::string_view(name) == "BRAINPAINT_ADDR" ? serve_addr.c_str() : nullptr;
        });
      }
      if (serve_retention > 0) options.retention = std::chrono::seconds(serve_retention);
      if (!serve_static.empty()) options.static_dir = serve_static;
      brainpaint::Service service(options);
      const int port = service.start();
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "INFO listening http://" << options.host << ":" << port << "\n";
      service.wait();
      g_service = nullptr;
      return 0;
    }
  } catch (const Error& e) {
    print_error(e);
    return brainpaint::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "ERROR internal_error " << e.what() << "\n";
    return brainpaint::exit_code_for(brainpaint::ErrorKind::kIo);
  }
  return 0;
}

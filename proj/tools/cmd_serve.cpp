/* Copyright 2026 The Weedkit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include <pthread.h>
#include <signal.h>

#include <atomic>
#include <filesystem>
#include <iostream>
#include <memory>
#include <thread>

#include "commands.hpp"
#include "weedkit/review_server.hpp"
#include "weedkit/review_store.hpp"

namespace weedkit::cli {
namespace {

struct ServeOptions {
  std::string dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string cors_origin = "*";
  std::string static_dir;
};

int RunServe(const ServeOptions& opt, const GlobalOptions& global) {
  if (!std::filesystem::is_directory(opt.dir)) {
    return ReportError(kExitIo, "not a readable directory: " + opt.dir);
  }
  review::ReviewStore store(opt.dir, global.LoadTaxonomy());
  review::ServerOptions server_opt;
  server_opt.host = opt.host;
  server_opt.port = opt.port;
  server_opt.cors_origin = opt.cors_origin;
  server_opt.static_dir = opt.static_dir;
  review::ReviewServer server(store, server_opt);

  // Block the stop signals before any server thread exists so only the
  // waiter below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const int port = server.Bind();
  std::atomic<bool> stopping{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    stopping = true;
    server.Stop();
  });

  std::cout << "serving " << store.size() << " images on http://" << opt.host << ":" << port
            << std::endl;
  server.Listen();
  if (!stopping) pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  std::cout << "stopped" << std::endl;
  return kExitOk;
}

}  // namespace

void AddServeCommand(CLI::App& app, const GlobalOptions& global, Runner& runner) {
  auto opt = std::make_shared<ServeOptions>();
  auto* cmd = app.add_subcommand("serve", "Run the annotation review API over a dataset directory");
  cmd->add_option("--dir", opt->dir, "Dataset directory (images + VOC XML)")->required();
  cmd->add_option("--host", opt->host, "Listen address")
      ->capture_default_str()
      ->envname("WEEDKIT_HOST");
  cmd->add_option("--port", opt->port, "Listen port, 0 for any free port")
      ->capture_default_str()
      ->check(CLI::Range(0, 65535))
      ->envname("WEEDKIT_PORT");
  cmd->add_option("--cors-origin", opt->cors_origin, "Allowed browser origin, empty to disable CORS")
      ->capture_default_str()
      ->envname("WEEDKIT_CORS_ORIGIN");
  cmd->add_option("--static", opt->static_dir, "Serve review UI assets from this directory at /")
      ->check(CLI::ExistingDirectory)
      ->envname("WEEDKIT_STATIC_DIR");
  cmd->callback([opt, &global, &runner] { runner = [opt, &global] { return RunServe(*opt, global); }; });
}

}  // namespace weedkit::cli

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
// JSON-over-HTTP front end for ReviewStore. See README "Review API" for the
// wire schema.
#ifndef WEEDKIT_REVIEW_SERVER_HPP_
#define WEEDKIT_REVIEW_SERVER_HPP_

#include <filesystem>
#include <memory>
#include <string>

#include "weedkit/review_store.hpp"

namespace weedkit::review {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string cors_origin = "*";  // empty disables CORS headers
  std::filesystem::path static_dir;  // optional UI assets served at "/"
};

class ReviewServer {
 public:
  ReviewServer(ReviewStore& store, ServerOptions options);
  ~ReviewServer();

  /// Binds the listening socket. Throws Error(kIoError) when the address is
  /// unavailable. Returns the bound port.
  int Bind();

  /// Serves until Stop(). Requests in flight when Stop() is called run to
  /// completion before Listen() returns.
  void Listen();

  /// Safe to call from any thread.
  void Stop();

  int port() const { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace weedkit::review

#endif  // WEEDKIT_REVIEW_SERVER_HPP_

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
#include "weedkit/review_server.hpp"

#include <charconv>
#include <mutex>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "weedkit/file_util.hpp"

namespace weedkit::review {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::size_t kDefaultPageSize = 100;
constexpr std::size_t kMaxPageSize = 1000;
constexpr char kJson[] = "application/json";

ordered_json BoxToJson(const ReviewBox& b) {
  return {{"label", b.label}, {"xmin", b.xmin},   {"ymin", b.ymin},           {"xmax", b.xmax},
          {"ymax", b.ymax},   {"pose", b.pose},   {"truncated", b.truncated}, {"difficult", b.difficult}};
}

ordered_json RecordToJson(const ReviewRecord& r) {
  ordered_json boxes = ordered_json::array();
  for (const auto& b : r.boxes) boxes.push_back(BoxToJson(b));
  return {{"image_id", r.image_id}, {"filename", r.filename}, {"width", r.width},
          {"height", r.height},     {"reviewed", r.reviewed}, {"revision", r.revision},
          {"boxes", std::move(boxes)}};
}

// Thrown for request bodies or parameters that do not fit the schema.
struct BadRequest {
  std::string message;
};

int IntField(const json& obj, const char* key, std::optional<int> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw BadRequest{std::string("missing field '") + key + "'"};
  }
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw BadRequest{std::string("field '") + key + "' must be an integer"};
  const auto n = v.get<std::int64_t>();
  if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max()) {
    throw BadRequest{std::string("field '") + key + "' out of range"};
  }
  return static_cast<int>(n);
}

std::vector<ReviewBox> BoxesFromJson(const json& arr) {
  if (!arr.is_array()) throw BadRequest{"'boxes' must be an array"};
  std::vector<ReviewBox> boxes;
  for (const auto& j : arr) {
    if (!j.is_object()) throw BadRequest{"each box must be an object"};
    ReviewBox b;
    if (!j.contains("label") || !j.at("label").is_string()) {
      throw BadRequest{"box field 'label' must be a string"};
    }
    b.label = j.at("label").get<std::string>();
    b.xmin = IntField(j, "xmin");
    b.ymin = IntField(j, "ymin");
    b.xmax = IntField(j, "xmax");
    b.ymax = IntField(j, "ymax");
    if (j.contains("pose")) {
      if (!j.at("pose").is_string()) throw BadRequest{"box field 'pose' must be a string"};
      b.pose = j.at("pose").get<std::string>();
    }
    b.truncated = IntField(j, "truncated", 0);
    b.difficult = IntField(j, "difficult", 0);
    boxes.push_back(std::move(b));
  }
  return boxes;
}

std::size_t QueryNumber(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string text = req.get_param_value(key);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw BadRequest{std::string("query parameter '") + key + "' must be a non-negative integer"};
  }
  return value;
}

int HttpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kRevisionConflict: return 409;
    case ErrorCode::kValidationFailed: return 422;
    default: return 500;
  }
}

void SendJson(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", kJson);
}

void SendError(httplib::Response& res, int status, std::string_view error, const std::string& message,
               const std::vector<BoxIssue>& issues = {}) {
  ordered_json body = {{"error", error}, {"message", message}};
  if (!issues.empty()) {
    auto& arr = body["issues"] = ordered_json::array();
    for (const auto& i : issues) arr.push_back({{"box", i.box}, {"message", i.message}});
  }
  SendJson(res, status, body);
}

std::string ContentType(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".bmp") return "image/bmp";
  if (ext == ".webp") return "image/webp";
  if (ext == ".tif" || ext == ".tiff") return "image/tiff";
  if (ext == ".ppm" || ext == ".pgm") return "image/x-portable-anymap";
  return "application/octet-stream";
}

// Wraps a handler so library errors and schema violations become JSON error
// responses.
template <typename F>
httplib::Server::Handler Guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const BadRequest& e) {
      SendError(res, 400, "BadRequest", e.message);
    } catch (const json::exception& e) {
      SendError(res, 400, "BadRequest", std::string("invalid JSON: ") + e.what());
    } catch (const ValidationFailed& e) {
      SendError(res, 422, ErrorCodeName(e.code()), e.what(), e.issues());
    } catch (const Error& e) {
      SendError(res, HttpStatus(e.code()), ErrorCodeName(e.code()), e.what());
    } catch (const std::exception& e) {
      SendError(res, 500, "Internal", e.what());
    }
  };
}

}  // namespace

struct ReviewServer::Impl {
  Impl(ReviewStore& s, ServerOptions o) : store(s), options(std::move(o)) {}

  ReviewStore& store;
  ServerOptions options;
  httplib::Server server;
  std::mutex state_mu;
  bool listen_entered = false;
  bool stop_requested = false;
};

ReviewServer::ReviewServer(ReviewStore& store, ServerOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
  auto& svr = impl_->server;
  auto& st = impl_->store;

  // The library default sets SO_REUSEPORT, which lets a second server bind
  // a port already in use. SO_REUSEADDR alone still allows quick restarts.
  svr.set_socket_options([](socket_t sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  svr.Get("/api/images", Guarded([&st](const httplib::Request& req, httplib::Response& res) {
    const std::size_t offset = QueryNumber(req, "offset", 0);
    const std::size_t limit = QueryNumber(req, "limit", kDefaultPageSize);
    if (limit == 0 || limit > kMaxPageSize) {
      throw BadRequest{"'limit' must be between 1 and " + std::to_string(kMaxPageSize)};
    }
    const auto page = st.List(offset, limit);
    ordered_json items = ordered_json::array();
    for (const auto& item : page.items) {
      items.push_back(
          {{"image_id", item.image_id}, {"reviewed", item.reviewed}, {"box_count", item.box_count}});
    }
    SendJson(res, 200,
             {{"total", page.total}, {"offset", page.offset}, {"limit", page.limit}, {"items", items}});
  }));

  svr.Get(R"(/api/images/([^/]+))", Guarded([&st](const httplib::Request& req, httplib::Response& res) {
    const auto path = st.ImagePath(req.matches[1]);
    res.status = 200;
    res.set_content(io::ReadFile(path), ContentType(path));
  }));

  svr.Get(R"(/api/annotations/([^/]+))",
          Guarded([&st](const httplib::Request& req, httplib::Response& res) {
            SendJson(res, 200, RecordToJson(st.Get(req.matches[1])));
          }));

  svr.Put(R"(/api/annotations/([^/]+))",
          Guarded([&st](const httplib::Request& req, httplib::Response& res) {
            const auto body = json::parse(req.body);
            if (!body.is_object()) throw BadRequest{"body must be a JSON object"};
            if (!body.contains("revision") || !body.at("revision").is_number_integer()) {
              throw BadRequest{"field 'revision' must be an integer"};
            }
            if (!body.contains("boxes")) throw BadRequest{"missing field 'boxes'"};
            const auto revision = body.at("revision").get<std::int64_t>();
            const auto boxes = BoxesFromJson(body.at("boxes"));
            SendJson(res, 200, RecordToJson(st.Put(req.matches[1], revision, boxes)));
          }));

  svr.Post(R"(/api/annotations/([^/]+)/reviewed)",
           Guarded([&st](const httplib::Request& req, httplib::Response& res) {
             const auto body = json::parse(req.body);
             if (!body.is_object() || !body.contains("reviewed") || !body.at("reviewed").is_boolean()) {
               throw BadRequest{"field 'reviewed' must be a boolean"};
             }
             SendJson(res, 200, RecordToJson(st.SetReviewed(req.matches[1], body.at("reviewed").get<bool>())));
           }));

  svr.Get("/api/taxonomy", Guarded([&st](const httplib::Request&, httplib::Response& res) {
    const auto& tax = st.taxonomy();
    ordered_json species = ordered_json::array();
    for (const auto& s : tax.species()) {
      species.push_back({{"code", s.code},
                         {"scientific_name", s.scientific_name},
                         {"common_name", s.common_name},
                         {"family", s.family},
                         {"active_weeks", s.active_weeks}});
    }
    ordered_json classes = ordered_json::array();
    for (const auto& c : tax.classes()) classes.push_back(c.ToString());
    SendJson(res, 200, {{"species", species}, {"classes", classes}, {"aliases", tax.aliases()}});
  }));

  const std::string origin = impl_->options.cors_origin;
  if (!origin.empty()) {
    svr.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", origin);
      res.set_header("Vary", "Origin");
    });
    svr.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Methods", "GET, HEAD, PUT, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
      res.set_header("Access-Control-Max-Age", "600");
    });
  }

  svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      SendError(res, res.status, "NotFound", "no such endpoint");
    }
  });

  if (!impl_->options.static_dir.empty()) {
    svr.set_mount_point("/", impl_->options.static_dir.string());
  }
}

ReviewServer::~ReviewServer() { Stop(); }

int ReviewServer::Bind() {
  auto& svr = impl_->server;
  const auto& opt = impl_->options;
  if (opt.port == 0) {
    port_ = svr.bind_to_any_port(opt.host);
    if (port_ < 0) port_ = 0;
  } else if (svr.bind_to_port(opt.host, opt.port)) {
    port_ = opt.port;
  }
  if (port_ <= 0) {
    throw Error(ErrorCode::kIoError,
                "cannot bind " + opt.host + ":" + std::to_string(opt.port) + " (address in use?)");
  }
  return port_;
}

void ReviewServer::Listen() {
  {
    std::lock_guard lock(impl_->state_mu);
    if (impl_->stop_requested) return;
    impl_->listen_entered = true;
  }
  impl_->server.listen_after_bind();
}

// httplib ignores stop() until the accept loop is running, so a Stop racing
// a freshly started Listen waits for the loop first.
void ReviewServer::Stop() {
  if (!impl_) return;
  {
    std::lock_guard lock(impl_->state_mu);
    impl_->stop_requested = true;
    if (!impl_->listen_entered) return;
  }
  impl_->server.wait_until_ready();
  impl_->server.stop();
}

}  // namespace weedkit::review

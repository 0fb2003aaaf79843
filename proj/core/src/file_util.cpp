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
#include "weedkit/file_util.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "weedkit/error.hpp"

namespace weedkit::io {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void IoFailure(const std::string& what, const fs::path& path) {
  throw Error(ErrorCode::kIoError, what + " " + path.string() + ": " + std::strerror(errno));
}

void WriteAll(int fd, std::string_view bytes, const fs::path& path) {
  const char* p = bytes.data();
  std::size_t left = bytes.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      IoFailure("write", path);
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

}  // namespace

void WriteFileAtomic(const fs::path& path, std::string_view bytes) {
  static std::atomic<unsigned long> counter{0};
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + path.filename().string() + ".tmp." + std::to_string(::getpid()) +
                              "." + std::to_string(counter.fetch_add(1)));

  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) IoFailure("cannot create", tmp);
  try {
    WriteAll(fd, bytes, tmp);
    if (::fsync(fd) != 0) IoFailure("fsync", tmp);
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  if (::close(fd) != 0) {
    ::unlink(tmp.c_str());
    IoFailure("close", tmp);
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    const int saved = errno;
    ::unlink(tmp.c_str());
    errno = saved;
    IoFailure("rename onto", path);
  }
  // Persist the directory entry as well; failure here is not fatal.
  if (const int dfd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC); dfd >= 0) {
    ::fsync(dfd);
    ::close(dfd);
  }
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) IoFailure("cannot open", path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) IoFailure("read", path);
  return std::move(buf).str();
}

bool IsImagePath(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static const char* const kExts[] = {".png", ".jpg", ".jpeg", ".bmp", ".ppm",
                                      ".pgm", ".tif", ".tiff", ".webp"};
  return std::any_of(std::begin(kExts), std::end(kExts), [&](const char* e) { return ext == e; });
}

std::vector<fs::path> ListFiles(const fs::path& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError, "cannot list directory " + dir.string() + ": " + ec.message());
  }
  std::vector<fs::path> files;
  for (const auto& entry : it) {
    std::error_code type_ec;
    // Dotfiles are temp files and sidecars, never dataset members.
    if (entry.path().filename().string().starts_with('.')) continue;
    if (entry.is_regular_file(type_ec)) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

}  // namespace weedkit::io

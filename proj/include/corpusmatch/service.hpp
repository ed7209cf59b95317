// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include "corpusmatch/detection.hpp"
#include "corpusmatch/normalization.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace corpusmatch {

/// Longest accepted check text, in codepoints.
inline constexpr std::size_t kMaxCheckTextChars = 1'000'000;

struct ServiceConfig {
  std::filesystem::path store_path;
  DetectionConfig defaults;
  StopwordSet stops;
  std::optional<std::filesystem::path> ui_dir;
  std::chrono::seconds timeout{120};
};

struct HttpReply {
  int status = 200;
  std::string body;
  std::string content_type = "application/json; charset=utf-8";
};

/// JSON API over a corpus store. Each request opens the store read-only, so
/// handlers share no mutable state and may run concurrently.
///
///   POST /api/check   {"text": ..., "threshold"?: 0..100, "max_results"?: n}
///   GET  /api/books
///   GET  /api/health
class Service {
 public:
  explicit Service(ServiceConfig config);

  HttpReply check(std::string_view body) const;
  HttpReply books() const;
  HttpReply health() const;

  /// Registers the API routes, and static files from ui_dir at "/".
  void mount(httplib::Server& server) const;

  const ServiceConfig& config() const { return config_; }

 private:
  ServiceConfig config_;
};

/// Blocks serving on host:port until the server is stopped.
/// Returns false if the socket could not be bound.
bool serve(const Service& service, const std::string& host, int port);

}  // namespace corpusmatch

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/service.hpp"

#include "corpusmatch/json_text.hpp"
#include "corpusmatch/utf8.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

using nlohmann::json;

namespace corpusmatch {
namespace {

HttpReply error_reply(int status, std::string_view code, const std::string& message,
                      std::string_view field = {}) {
  json err = {{"code", code}, {"message", message}};
  if (!field.empty()) err["field"] = field;
  return {status, json_text(json{{"error", err}})};
}

HttpReply store_unavailable(const std::exception& e) {
  return error_reply(503, "store_unavailable", e.what());
}

constexpr const char* kNoUiPage =
    "<!doctype html><meta charset=\"utf-8\"><title>corpusmatch</title>"
    "<p>The web UI bundle is not installed. The JSON API is served under /api/.</p>";

}  // namespace

Service::Service(ServiceConfig config) : config_(std::move(config)) {
  config_.defaults.validate();
}

HttpReply Service::check(std::string_view body) const {
  json request;
  try {
    request = json::parse(body);
  } catch (const json::parse_error& e) {
    return error_reply(400, "malformed_json", e.what());
  }
  if (!request.is_object()) return error_reply(400, "malformed_json", "request body must be a JSON object");

  const auto text_it = request.find("text");
  if (text_it == request.end() || !text_it->is_string()) {
    return error_reply(400, "invalid_field", "\"text\" must be a string", "text");
  }
  const std::string& text = text_it->get_ref<const std::string&>();
  // Cheap byte bound first; a codepoint is at most four bytes.
  if (text.size() > kMaxCheckTextChars && utf8::length(text) > kMaxCheckTextChars) {
    return error_reply(413, "text_too_large",
                       "text exceeds " + std::to_string(kMaxCheckTextChars) + " characters", "text");
  }

  DetectionConfig cfg = config_.defaults;
  if (const auto it = request.find("threshold"); it != request.end() && !it->is_null()) {
    if (!it->is_number()) return error_reply(400, "invalid_field", "\"threshold\" must be a number", "threshold");
    cfg.threshold = it->get<double>();
    if (!(cfg.threshold >= 0.0 && cfg.threshold <= 100.0)) {
      return error_reply(400, "invalid_field", "\"threshold\" must be within [0, 100]", "threshold");
    }
  }
  if (const auto it = request.find("max_results"); it != request.end() && !it->is_null()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
      return error_reply(400, "invalid_field", "\"max_results\" must be a positive integer", "max_results");
    }
    cfg.max_results = it->get<std::size_t>();
  }
  cfg.deadline = std::chrono::steady_clock::now() + config_.timeout;

  std::optional<CorpusStore> store;
  try {
    store.emplace(CorpusStore::open(config_.store_path));
  } catch (const std::exception& e) {
    return store_unavailable(e);
  }

  json response;
  try {
    const DetectionReport report = detect(text, *store, cfg, config_.stops);
    response = {{"matches", matches_to_json(report.matches)},
                {"pages_scanned", report.pages_scanned},
                {"elapsed_ms", report.elapsed_ms},
                {"normalized_query_length", report.query_length_chars}};
  } catch (const EmptyQueryError& e) {
    response = {{"matches", json::array()},
                {"pages_scanned", 0},
                {"elapsed_ms", 0},
                {"normalized_query_length", 0},
                {"warning", e.what()}};
  } catch (const DetectionTimeout& e) {
    return error_reply(504, "timeout", e.what());
  } catch (const StoreError& e) {
    return store_unavailable(e);
  }
  return {200, json_text(response)};
}

HttpReply Service::books() const {
  try {
    const CorpusStore store = CorpusStore::open(config_.store_path);
    json out = json::array();
    for (const auto& b : store.books()) {
      out.push_back({{"id", b.id},
                     {"title", b.title},
                     {"author", b.author},
                     {"source", b.source},
                     {"page_count", b.page_count}});
    }
    return {200, json_text(out)};
  } catch (const std::exception& e) {
    return store_unavailable(e);
  }
}

HttpReply Service::health() const {
  try {
    const CorpusStore store = CorpusStore::open(config_.store_path);
    const json out = {{"status", "ok"},
                      {"store",
                       {{"books", store.books().size()},
                        {"pages", store.total_pages()},
                        {"script_range", store.script_range().to_string()},
                        {"format_version", CorpusStore::kFormatVersion}}}};
    return {200, json_text(out)};
  } catch (const std::exception& e) {
    return {503, json_text(json{{"status", "unavailable"}, {"error", e.what()}})};
  }
}

void Service::mount(httplib::Server& server) const {
  auto send = [](httplib::Response& res, const HttpReply& reply) {
    res.status = reply.status;
    res.set_content(reply.body, reply.content_type);
  };
  server.Post("/api/check", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, check(req.body));
  });
  server.Get("/api/books", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, books());
  });
  server.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, health());
  });

  if (config_.ui_dir && server.set_mount_point("/", config_.ui_dir->string())) return;
  server.Get("/", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(kNoUiPage, "text/html; charset=utf-8");
  });
}

bool serve(const Service& service, const std::string& host, int port) {
  httplib::Server server;
  // Leave room for the largest accepted text plus JSON escaping.
  server.set_payload_max_length(kMaxCheckTextChars * 4 * 2);
  const auto timeout = service.config().timeout.count();
  server.set_read_timeout(timeout, 0);
  server.set_write_timeout(timeout, 0);
  service.mount(server);
  return server.listen(host, port);
}

}  // namespace corpusmatch

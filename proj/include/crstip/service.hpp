// Copyright 2026 The CRSTIP Authors
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

/// \file
/// HTTP/JSON API over the engine and the store.
///
///     GET  /api/schemes                          scheme list
///     GET  /api/schemes/{id}                     canonical scheme document
///     POST /api/sessions                         {scheme_id, subject} -> 201 session
///     GET  /api/sessions                         session summaries
///     GET  /api/sessions/{id}                    session document
///     PUT  /api/sessions/{id}/answers/{ind}      {value, note?} -> session summary
///     GET  /api/sessions/{id}/profile            {profile, violations}
///     POST /api/sessions/{id}/gaps               {targets} -> gap report
///     POST /api/sessions/{id}/roadmap            {targets} -> roadmap
///     POST /api/charts/radar                     {spec} | {sessions} | {profiles} -> SVG
///
/// Every non-2xx body is one {"status", "code", "message"} object.

#ifndef CRSTIP_SERVICE_HPP
#define CRSTIP_SERVICE_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "crstip/engine.hpp"
#include "crstip/store.hpp"

namespace crstip {

struct ApiRequest {
  std::string method;  // "GET", "POST", ...
  std::string path;    // "/api/..."
  std::string body;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

inline constexpr const char* kDefaultListen = "127.0.0.1:8642";
inline constexpr const char* kDefaultDataDir = "./crstip-data";

class AssessmentService {
 public:
  /// Opens (and initializes) the store and installs the bundled scheme when
  /// the store does not have it yet.
  explicit AssessmentService(std::filesystem::path data_dir,
                             SessionEnvironment env = system_environment());

  /// Transport-independent dispatch. Thread-safe.
  ApiResponse handle(const ApiRequest& request);

  ProfileStore& store() { return store_; }

 private:
  ApiResponse route(const ApiRequest& request);
  const Scheme& scheme(const std::string& id);
  const Scheme& scheme_for(const AssessmentSession& session);

  ProfileStore store_;
  SessionEnvironment env_;
  std::shared_mutex schemes_mutex_;
  std::map<std::string, std::shared_ptr<const Scheme>> schemes_;
};

/// Blocking HTTP server around an `AssessmentService`.
class HttpServer {
 public:
  explicit HttpServer(AssessmentService& service,
                      std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until `stop()`.
  bool run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Splits "host:port". Returns nullopt when the port is not a number in
/// [0, 65535].
std::optional<std::pair<std::string, int>> parse_listen_address(const std::string& text);

}  // namespace crstip

#endif  // CRSTIP_SERVICE_HPP

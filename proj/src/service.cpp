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

#include "crstip/service.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <vector>

#include <httplib.h>

#include "crstip/codec.hpp"
#include "crstip/error.hpp"
#include "crstip/radar.hpp"
#include "crstip/scheme_parser.hpp"

namespace crstip {

namespace {

int status_for(const std::string& code) {
  if (code == codes::kNotFound) return 404;
  if (code == codes::kSchemeMismatch) return 409;
  if (code == codes::kIoFailure || code == codes::kCorruptDocument) return 500;
  return 400;
}

ApiResponse error_response(int status, const std::string& code, const std::string& message) {
  Json body;
  body["status"] = status;
  body["code"] = code;
  body["message"] = message;
  return ApiResponse{status, "application/json", canonical_dump(body)};
}

ApiResponse json_response(const Json& body, int status = 200) {
  return ApiResponse{status, "application/json", canonical_dump(body)};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start < path.size()) {
    std::size_t end = path.find('/', start);
    if (end == std::string::npos) end = path.size();
    if (end > start) parts.push_back(path.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

Json parse_body(const std::string& body) {
  try {
    Json document = Json::parse(body);
    if (!document.is_object()) throw Error(codes::kValidation, "request body must be an object");
    return document;
  } catch (const nlohmann::json::exception& e) {
    throw Error(codes::kValidation, std::string("malformed JSON body: ") + e.what());
  }
}

Targets targets_from_body(const Scheme& scheme, const Json& body) {
  auto it = body.find("targets");
  if (it == body.end() || !it->is_object()) {
    throw Error(codes::kValidation, "body needs a 'targets' object of area -> rank");
  }
  Targets targets;
  for (const auto& [area, rank] : it->items()) {
    if (!rank.is_number_integer()) {
      throw Error(codes::kValidation, "target rank for '" + area + "' must be an integer");
    }
    long long value = rank.get<long long>();
    if (value < -1000000 || value > 1000000) {
      throw Error(codes::kUnknownAreaLevel, "target rank for '" + area + "' is out of range");
    }
    if (area == "all") {
      for (const auto& a : scheme.areas) targets[a.id] = static_cast<int>(value);
    } else {
      targets[area] = static_cast<int>(value);
    }
  }
  for (const auto& [area, rank] : targets) {
    if (!scheme.contains(AreaLevel{area, rank})) {
      throw Error(codes::kUnknownAreaLevel,
                  "unknown target coordinate " + to_string(AreaLevel{area, rank}));
    }
  }
  return targets;
}

ChartSpec chart_spec_from_json(const Json& spec) {
  if (!spec.is_object()) throw Error(codes::kInvalidSpec, "'spec' must be an object");
  ChartSpec chart;
  try {
    chart.title = spec.value("title", std::string());
    chart.axes = spec.at("axes").get<std::vector<std::string>>();
    chart.max_rank = spec.at("max_rank").get<int>();
    for (const auto& series : spec.at("series")) {
      chart.series.push_back(ChartSeries{series.at("name").get<std::string>(),
                                         series.at("values").get<std::vector<int>>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(codes::kInvalidSpec, std::string("malformed chart spec: ") + e.what());
  }
  return chart;
}

std::vector<std::string> optional_names(const Json& body, std::size_t count) {
  std::vector<std::string> names;
  if (auto it = body.find("names"); it != body.end()) {
    if (!it->is_array() || it->size() != count) {
      throw Error(codes::kValidation, "'names' must list one name per series");
    }
    for (const auto& name : *it) {
      if (!name.is_string()) throw Error(codes::kValidation, "'names' must hold strings");
      names.push_back(name.get<std::string>());
    }
  }
  return names;
}

}  // namespace

AssessmentService::AssessmentService(std::filesystem::path data_dir, SessionEnvironment env)
    : store_(std::move(data_dir)), env_(std::move(env)) {
  const Scheme& builtin = builtin_scheme();
  auto existing = store_.list_schemes();
  if (std::find(existing.begin(), existing.end(), builtin.id) == existing.end()) {
    store_.save_scheme(builtin);
  }
}

const Scheme& AssessmentService::scheme(const std::string& id) {
  {
    std::shared_lock guard(schemes_mutex_);
    if (auto it = schemes_.find(id); it != schemes_.end()) return *it->second;
  }
  auto loaded = std::make_shared<const Scheme>(store_.load_scheme(id));
  std::unique_lock guard(schemes_mutex_);
  auto [it, inserted] = schemes_.emplace(id, std::move(loaded));
  return *it->second;
}

const Scheme& AssessmentService::scheme_for(const AssessmentSession& session) {
  const Scheme& result = scheme(session.scheme_id);
  if (result.version != session.scheme_version) {
    throw Error(codes::kSchemeMismatch, "session uses " + session.scheme_id + "@" +
                                            session.scheme_version + " but the store has " +
                                            result.version);
  }
  return result;
}

ApiResponse AssessmentService::handle(const ApiRequest& request) {
  try {
    return route(request);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e.code(), e.what());
  } catch (const std::exception& e) {
    return error_response(500, codes::kIoFailure, e.what());
  }
}

ApiResponse AssessmentService::route(const ApiRequest& request) {
  const auto parts = split_path(request.path);
  const std::string& method = request.method;
  auto not_allowed = [&] {
    return error_response(405, "METHOD_NOT_ALLOWED",
                          method + " is not supported on " + request.path);
  };
  if (parts.size() < 2 || parts[0] != "api") {
    return error_response(404, codes::kNotFound, "no route for " + request.path);
  }

  if (parts[1] == "schemes") {
    if (method != "GET") return not_allowed();
    if (parts.size() == 2) {
      Json list = Json::array();
      for (const auto& id : store_.list_schemes()) {
        const Scheme& s = scheme(id);
        Json entry;
        entry["id"] = s.id;
        entry["name"] = s.name;
        entry["version"] = s.version;
        list.push_back(std::move(entry));
      }
      return json_response(list);
    }
    if (parts.size() == 3) {
      return ApiResponse{200, "application/json", serialize_scheme(scheme(parts[2]))};
    }
  }

  if (parts[1] == "sessions") {
    if (parts.size() == 2) {
      if (method == "GET") {
        Json list = Json::array();
        for (const auto& id : store_.list_sessions()) {
          list.push_back(session_summary_json(store_.load_session(id)));
        }
        return json_response(list);
      }
      if (method != "POST") return not_allowed();
      Json body = parse_body(request.body);
      auto scheme_id = body.find("scheme_id");
      if (scheme_id == body.end() || !scheme_id->is_string()) {
        throw Error(codes::kValidation, "body needs a 'scheme_id' string");
      }
      auto subject_json = body.find("subject");
      if (subject_json == body.end() || !subject_json->is_object()) {
        throw Error(codes::kValidation, "body needs a 'subject' object");
      }
      Json subject_doc = *subject_json;
      if (!subject_doc.contains("kind")) subject_doc["kind"] = "system";
      if (!subject_doc.contains("notes")) subject_doc["notes"] = "";
      SubjectInfo subject = subject_from_json(subject_doc);
      const Scheme& s = scheme(scheme_id->get<std::string>());
      AssessmentSession session = start_session(s, std::move(subject), env_);
      store_.save_session(session);
      return json_response(to_json(session), 201);
    }

    const std::string& id = parts[2];
    if (parts.size() == 3) {
      if (method != "GET") return not_allowed();
      return json_response(to_json(store_.load_session(id)));
    }
    if (parts.size() == 5 && parts[3] == "answers") {
      if (method != "PUT") return not_allowed();
      Json body = parse_body(request.body);
      auto value_json = body.find("value");
      if (value_json == body.end() || !value_json->is_string()) {
        throw Error(codes::kValidation, "body needs a 'value' of yes, no or unknown");
      }
      auto value = parse_answer_value(value_json->get<std::string>());
      if (!value) {
        throw Error(codes::kValidation,
                    "value '" + value_json->get<std::string>() + "' is not yes, no or unknown");
      }
      std::string note;
      if (auto it = body.find("note"); it != body.end()) {
        if (!it->is_string()) throw Error(codes::kValidation, "'note' must be a string");
        note = it->get<std::string>();
      }
      const std::string& indicator = parts[4];
      AssessmentSession updated = store_.update_session(id, [&](AssessmentSession current) {
        const Scheme& s = scheme_for(current);
        return record_answer(s, std::move(current), indicator, *value, note, env_);
      });
      return json_response(session_summary_json(updated));
    }
    if (parts.size() == 4) {
      AssessmentSession session = store_.load_session(id);
      const Scheme& s = scheme_for(session);
      if (parts[3] == "profile") {
        if (method != "GET") return not_allowed();
        return json_response(
            profile_report_json(compute_profile(s, session), check_consistency(s, session)));
      }
      if (parts[3] == "gaps") {
        if (method != "POST") return not_allowed();
        Targets targets = targets_from_body(s, parse_body(request.body));
        return json_response(to_json(gap_analysis(s, session, targets)));
      }
      if (parts[3] == "roadmap") {
        if (method != "POST") return not_allowed();
        Targets targets = targets_from_body(s, parse_body(request.body));
        return json_response(to_json(build_roadmap(s, compute_profile(s, session), targets)));
      }
    }
  }

  if (parts[1] == "charts" && parts.size() == 3 && parts[2] == "radar") {
    if (method != "POST") return not_allowed();
    Json body = parse_body(request.body);
    ChartSpec spec;
    if (auto it = body.find("spec"); it != body.end()) {
      spec = chart_spec_from_json(*it);
    } else {
      std::vector<Profile> profiles;
      if (auto sessions = body.find("sessions"); sessions != body.end()) {
        if (!sessions->is_array()) throw Error(codes::kValidation, "'sessions' must be an array");
        for (const auto& session_id : *sessions) {
          if (!session_id.is_string()) {
            throw Error(codes::kValidation, "'sessions' must hold session ids");
          }
          AssessmentSession session = store_.load_session(session_id.get<std::string>());
          profiles.push_back(compute_profile(scheme_for(session), session));
        }
      } else if (auto docs = body.find("profiles"); docs != body.end()) {
        if (!docs->is_array()) throw Error(codes::kValidation, "'profiles' must be an array");
        for (const auto& doc : *docs) profiles.push_back(profile_from_json(doc));
      } else {
        throw Error(codes::kValidation, "body needs 'spec', 'sessions' or 'profiles'");
      }
      if (profiles.empty() || profiles.size() > 2) {
        throw Error(codes::kInvalidSpec, "chart takes one or two profiles");
      }
      std::vector<std::string> names = optional_names(body, profiles.size());
      std::vector<std::pair<std::string, Profile>> series;
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        std::string name = names.empty() ? profiles[i].subject.name : names[i];
        series.emplace_back(std::move(name), profiles[i]);
      }
      const Scheme& s = scheme(profiles.front().scheme_id);
      std::string title;
      if (auto t = body.find("title"); t != body.end() && t->is_string()) title = *t;
      spec = chart_from_profiles(s, series, std::move(title));
    }
    return ApiResponse{200, "image/svg+xml", render_radar(spec)};
  }

  return error_response(404, codes::kNotFound, "no route for " + method + " " + request.path);
}

std::optional<std::pair<std::string, int>> parse_listen_address(const std::string& text) {
  std::size_t colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) return std::nullopt;
  std::string host = text.substr(0, colon);
  std::string_view port_text = std::string_view(text).substr(colon + 1);
  int port = -1;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port < 0 ||
      port > 65535) {
    return std::nullopt;
  }
  return std::pair{host, port};
}

struct HttpServer::Impl {
  explicit Impl(AssessmentService& s) : service(s) {}
  AssessmentService& service;
  httplib::Server server;
};

HttpServer::HttpServer(AssessmentService& service,
                       std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service)) {
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    ApiResponse response = impl_->service.handle(ApiRequest{req.method, req.path, req.body});
    res.status = response.status;
    res.set_content(response.body, response.content_type);
  };
  const std::string api = R"(/api(/.*)?)";
  impl_->server.Get(api, forward);
  impl_->server.Post(api, forward);
  impl_->server.Put(api, forward);
  impl_->server.Delete(api, forward);
  impl_->server.Patch(api, forward);
  if (static_dir) impl_->server.set_mount_point("/", static_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace crstip

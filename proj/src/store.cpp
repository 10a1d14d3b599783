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

#include "crstip/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "crstip/codec.hpp"
#include "crstip/error.hpp"
#include "crstip/scheme_parser.hpp"

namespace crstip {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void io_failure(const std::string& what, const fs::path& path) {
  throw Error(codes::kIoFailure, what + " " + path.string() + ": " + std::strerror(errno));
}

Json parse_document(const std::string& text, const fs::path& path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(codes::kCorruptDocument, path.string() + ": " + e.what());
  }
}

template <typename Decode>
auto decode(const std::string& text, const fs::path& path, Decode decoder) {
  Json document = parse_document(text, path);
  try {
    return decoder(document);
  } catch (const Error& e) {
    throw Error(codes::kCorruptDocument, path.string() + ": " + e.what());
  }
}

}  // namespace

bool is_valid_document_id(std::string_view id) {
  if (id.empty() || id.front() == '.') return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

void write_file_atomic(const fs::path& path, std::string_view text) {
  static std::atomic<unsigned long> counter{0};
  fs::path temp = path.parent_path() /
                  ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()) + "-" +
                   std::to_string(counter.fetch_add(1)));
  int fd = ::open(temp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) io_failure("cannot create", temp);
  const char* data = text.data();
  std::size_t left = text.size();
  while (left > 0) {
    ssize_t written = ::write(fd, data, left);
    if (written < 0) {
      if (errno == EINTR) continue;
      int saved = errno;
      ::close(fd);
      ::unlink(temp.c_str());
      errno = saved;
      io_failure("cannot write", temp);
    }
    data += written;
    left -= static_cast<std::size_t>(written);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    int saved = errno;
    ::unlink(temp.c_str());
    errno = saved;
    io_failure("cannot flush", temp);
  }
  if (::rename(temp.c_str(), path.c_str()) != 0) {
    int saved = errno;
    ::unlink(temp.c_str());
    errno = saved;
    io_failure("cannot rename onto", path);
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!fs::exists(path)) throw Error(codes::kNotFound, "no such document " + path.string());
    io_failure("cannot open", path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) io_failure("cannot read", path);
  return buffer.str();
}

ProfileStore::ProfileStore(fs::path root) : root_(std::move(root)) {
  for (const char* kind : {"sessions", "profiles", "schemes"}) {
    std::error_code ec;
    fs::create_directories(root_ / kind, ec);
    if (ec) {
      throw Error(codes::kIoFailure,
                  "cannot create " + (root_ / kind).string() + ": " + ec.message());
    }
  }
}

fs::path ProfileStore::document_path(std::string_view kind, std::string_view id) const {
  return root_ / std::string(kind) / (std::string(id) + ".json");
}

std::shared_ptr<std::mutex> ProfileStore::lock_for(const std::string& key) {
  std::lock_guard guard(registry_mutex_);
  auto& slot = locks_[key];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

void ProfileStore::write_locked(std::string_view kind, std::string_view id,
                                const std::string& text) {
  if (!is_valid_document_id(id)) {
    throw Error(codes::kValidation, "'" + std::string(id) + "' is not a valid document id");
  }
  auto lock = lock_for(std::string(kind) + "/" + std::string(id));
  std::lock_guard guard(*lock);
  write_file_atomic(document_path(kind, id), text);
}

std::vector<std::string> ProfileStore::list(std::string_view kind) const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_ / std::string(kind), ec)) {
    const std::string name = entry.path().filename().string();
    if (name.empty() || name.front() == '.' || entry.path().extension() != ".json") continue;
    ids.push_back(entry.path().stem().string());
  }
  if (ec) {
    throw Error(codes::kIoFailure, "cannot list " + (root_ / std::string(kind)).string() +
                                       ": " + ec.message());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string ProfileStore::save_session(const AssessmentSession& session) {
  write_locked("sessions", session.id, canonical_dump(to_json(session)));
  return session.id;
}

AssessmentSession ProfileStore::load_session(std::string_view id) const {
  if (!is_valid_document_id(id)) {
    throw Error(codes::kNotFound, "no session '" + std::string(id) + "'");
  }
  fs::path path = document_path("sessions", id);
  return decode(read_file(path), path, session_from_json);
}

std::vector<std::string> ProfileStore::list_sessions() const { return list("sessions"); }

AssessmentSession ProfileStore::update_session(
    std::string_view id, const std::function<AssessmentSession(AssessmentSession)>& change) {
  if (!is_valid_document_id(id)) {
    throw Error(codes::kNotFound, "no session '" + std::string(id) + "'");
  }
  auto lock = lock_for("sessions/" + std::string(id));
  std::lock_guard guard(*lock);
  AssessmentSession updated = change(load_session(id));
  if (updated.id != id) {
    throw Error(codes::kValidation, "session update changed the id");
  }
  write_file_atomic(document_path("sessions", id), canonical_dump(to_json(updated)));
  return updated;
}

void ProfileStore::save_profile(std::string_view name, const Profile& profile) {
  write_locked("profiles", name, canonical_dump(to_json(profile)));
}

Profile ProfileStore::load_profile(std::string_view name) const {
  if (!is_valid_document_id(name)) {
    throw Error(codes::kNotFound, "no profile '" + std::string(name) + "'");
  }
  fs::path path = document_path("profiles", name);
  return decode(read_file(path), path, profile_from_json);
}

std::vector<std::string> ProfileStore::list_profiles() const { return list("profiles"); }

void ProfileStore::save_scheme(const Scheme& scheme) {
  write_locked("schemes", scheme.id, serialize_scheme(scheme));
}

Scheme ProfileStore::load_scheme(std::string_view id) const {
  if (!is_valid_document_id(id)) {
    throw Error(codes::kNotFound, "no scheme '" + std::string(id) + "'");
  }
  fs::path path = document_path("schemes", id);
  ParseResult parsed = parse_scheme(read_file(path));
  if (!parsed.ok()) {
    throw Error(codes::kCorruptDocument,
                path.string() + ":" + format_diagnostic(parsed.diagnostics.front()));
  }
  return std::move(*parsed.scheme);
}

std::vector<std::string> ProfileStore::list_schemes() const { return list("schemes"); }

}  // namespace crstip

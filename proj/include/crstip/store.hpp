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
/// Plain-file document store.
///
/// Layout under the root directory:
///
///     sessions/<id>.json
///     profiles/<name>.json
///     schemes/<id>.json
///
/// Every write goes to a hidden temporary file in the same directory and is
/// then renamed over the target, so readers observe either the old or the
/// new document. Leftover temporaries (names starting with '.') are ignored
/// by the listings. Writes to one document are serialized; reads take no
/// locks.

#ifndef CRSTIP_STORE_HPP
#define CRSTIP_STORE_HPP

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "crstip/engine.hpp"
#include "crstip/scheme.hpp"

namespace crstip {

class ProfileStore {
 public:
  /// Creates the directory layout if needed. Throws `Error(IO_FAILURE)`.
  explicit ProfileStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  std::string save_session(const AssessmentSession& session);
  AssessmentSession load_session(std::string_view id) const;
  std::vector<std::string> list_sessions() const;

  /// Read-modify-write under the session's write lock. Returns the stored
  /// result.
  AssessmentSession update_session(
      std::string_view id,
      const std::function<AssessmentSession(AssessmentSession)>& change);

  void save_profile(std::string_view name, const Profile& profile);
  Profile load_profile(std::string_view name) const;
  std::vector<std::string> list_profiles() const;

  void save_scheme(const Scheme& scheme);
  Scheme load_scheme(std::string_view id) const;
  std::vector<std::string> list_schemes() const;

 private:
  std::filesystem::path document_path(std::string_view kind, std::string_view id) const;
  std::shared_ptr<std::mutex> lock_for(const std::string& key);
  void write_locked(std::string_view kind, std::string_view id, const std::string& text);
  std::vector<std::string> list(std::string_view kind) const;

  std::filesystem::path root_;
  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

/// Writes `text` to `path` through a temporary file and rename(2).
void write_file_atomic(const std::filesystem::path& path, std::string_view text);

/// Throws `Error(NOT_FOUND)` or `Error(IO_FAILURE)`.
std::string read_file(const std::filesystem::path& path);

/// Ids usable as file names: [A-Za-z0-9_.-]+, not starting with '.'.
bool is_valid_document_id(std::string_view id);

}  // namespace crstip

#endif  // CRSTIP_STORE_HPP

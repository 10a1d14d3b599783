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

#ifndef CRSTIP_ERROR_HPP
#define CRSTIP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace crstip {

/// Exception carrying a stable machine-readable code (e.g. "UNKNOWN_AREA").
///
/// Codes are part of the public contract: the service maps them onto HTTP
/// statuses and the CLI prints them to stderr.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace codes {
inline constexpr const char* kInvalidScheme = "INVALID_SCHEME";
inline constexpr const char* kUnknownArea = "UNKNOWN_AREA";
inline constexpr const char* kUnknownAreaLevel = "UNKNOWN_AREA_LEVEL";
inline constexpr const char* kUnknownIndicator = "UNKNOWN_INDICATOR";
inline constexpr const char* kInconsistentProfile = "INCONSISTENT_PROFILE";
inline constexpr const char* kSchemeMismatch = "SCHEME_MISMATCH";
inline constexpr const char* kNotFound = "NOT_FOUND";
inline constexpr const char* kIoFailure = "IO_FAILURE";
inline constexpr const char* kCorruptDocument = "CORRUPT_DOCUMENT";
inline constexpr const char* kInvalidSpec = "INVALID_SPEC";
inline constexpr const char* kValidation = "VALIDATION";
}  // namespace codes

}  // namespace crstip

#endif  // CRSTIP_ERROR_HPP

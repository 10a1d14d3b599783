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
/// Reading and writing scheme definition files.
///
/// A definition file is a JSON document with a fixed key layout:
///
///     { "id", "name", "version",
///       "areas": [ { "id", "name", "description",
///                    "levels": [ { "rank", "name", "description",
///                                  "indicators": [ { "id", "statement" } ] } ] } ],
///       "prerequisites": [ { "subject": {"area", "rank"},
///                            "requires": {"area", "rank"},
///                            "rationale" } ] }
///
/// `serialize_scheme` writes exactly this key order with 2-space indentation,
/// LF line endings and a trailing newline. That form is canonical: parsing
/// and re-serializing it reproduces the same bytes.

#ifndef CRSTIP_SCHEME_PARSER_HPP
#define CRSTIP_SCHEME_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crstip/scheme.hpp"

namespace crstip {

enum class Severity { kError, kWarning };

struct ParseDiagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  int line = 1;
  int column = 1;

  friend bool operator==(const ParseDiagnostic&, const ParseDiagnostic&) = default;
};

namespace parse_codes {
inline constexpr const char* kSyntax = "SYNTAX";
inline constexpr const char* kTypeMismatch = "TYPE_MISMATCH";
inline constexpr const char* kMissingKey = "MISSING_KEY";
inline constexpr const char* kDuplicateKey = "DUPLICATE_KEY";
inline constexpr const char* kUnknownKey = "UNKNOWN_KEY";
}  // namespace parse_codes

struct ParseResult {
  std::optional<Scheme> scheme;  // set iff no error diagnostics
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const { return scheme.has_value(); }
};

/// Parses and structurally validates a definition document. Never throws on
/// malformed input; every problem becomes a diagnostic.
ParseResult parse_scheme(std::string_view text);

/// Canonical serialization. Throws `Error(INVALID_SCHEME)` when the scheme
/// does not pass `validate_scheme`.
std::string serialize_scheme(const Scheme& scheme);

/// "<line>:<column>: error|warning: CODE: message"
std::string format_diagnostic(const ParseDiagnostic& diagnostic);

/// The bundled canonical CRSTIP definition, byte for byte.
std::string_view builtin_scheme_text();
const Scheme& builtin_scheme();

}  // namespace crstip

#endif  // CRSTIP_SCHEME_PARSER_HPP

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

// Strict RFC 8259 reader that keeps the source position of every value and
// object key. Used where diagnostics must point back into the document.

#ifndef CRSTIP_SRC_JSON_READER_HPP
#define CRSTIP_SRC_JSON_READER_HPP

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace crstip::json_reader {

/// 1-based; columns count code points, not bytes.
struct Position {
  int line = 1;
  int column = 1;
};

struct Member;

struct Value {
  enum class Kind { kNull, kBool, kNumber, kString, kArray, kObject };

  Kind kind = Kind::kNull;
  Position position;
  bool boolean = false;
  std::string text;  // string contents, or the number's literal spelling
  bool is_integer = false;
  long long integer = 0;
  std::vector<Value> items;
  std::vector<Member> members;

  const Member* find(std::string_view key) const;
};

struct Member {
  std::string key;
  Position key_position;
  Value value;
};

struct SyntaxError {
  std::string message;
  Position position;
};

inline constexpr int kMaxDepth = 256;

std::variant<Value, SyntaxError> parse(std::string_view text);

const char* kind_name(Value::Kind kind);

}  // namespace crstip::json_reader

#endif  // CRSTIP_SRC_JSON_READER_HPP

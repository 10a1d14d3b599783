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

#include "json_reader.hpp"

#include <charconv>
#include <cstdint>

namespace crstip::json_reader {

const Member* Value::find(std::string_view key) const {
  for (const auto& member : members) {
    if (member.key == key) return &member;
  }
  return nullptr;
}

const char* kind_name(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::kNull: return "null";
    case Value::Kind::kBool: return "boolean";
    case Value::Kind::kNumber: return "number";
    case Value::Kind::kString: return "string";
    case Value::Kind::kArray: return "array";
    case Value::Kind::kObject: return "object";
  }
  return "value";
}

namespace {

struct Failure {
  SyntaxError error;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Value document() {
    skip_whitespace();
    if (at_end()) fail("empty document");
    Value root = value(0);
    skip_whitespace();
    if (!at_end()) fail("unexpected trailing content");
    return root;
  }

 private:
  [[noreturn]] void fail(std::string message) const {
    throw Failure{SyntaxError{std::move(message), position_}};
  }

  bool at_end() const { return offset_ >= text_.size(); }
  unsigned char peek() const { return static_cast<unsigned char>(text_[offset_]); }

  void advance() {
    unsigned char c = peek();
    ++offset_;
    if (c == '\n') {
      ++position_.line;
      position_.column = 1;
    } else if ((c & 0xC0) != 0x80) {
      ++position_.column;
    }
  }

  void skip_whitespace() {
    while (!at_end()) {
      unsigned char c = peek();
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') break;
      advance();
    }
  }

  void expect_literal(std::string_view word) {
    for (char c : word) {
      if (at_end() || peek() != static_cast<unsigned char>(c)) {
        fail("invalid literal, expected '" + std::string(word) + "'");
      }
      advance();
    }
  }

  Value value(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    if (at_end()) fail("unexpected end of document");
    Value result;
    result.position = position_;
    switch (peek()) {
      case '{':
        result.kind = Value::Kind::kObject;
        object(result, depth);
        break;
      case '[':
        result.kind = Value::Kind::kArray;
        array(result, depth);
        break;
      case '"':
        result.kind = Value::Kind::kString;
        result.text = string();
        break;
      case 't':
        expect_literal("true");
        result.kind = Value::Kind::kBool;
        result.boolean = true;
        break;
      case 'f':
        expect_literal("false");
        result.kind = Value::Kind::kBool;
        break;
      case 'n':
        expect_literal("null");
        break;
      default:
        if (peek() == '-' || (peek() >= '0' && peek() <= '9')) {
          number(result);
        } else {
          fail("unexpected character");
        }
    }
    return result;
  }

  void object(Value& result, int depth) {
    advance();  // '{'
    skip_whitespace();
    if (!at_end() && peek() == '}') {
      advance();
      return;
    }
    while (true) {
      skip_whitespace();
      if (at_end() || peek() != '"') fail("expected object key");
      Member member;
      member.key_position = position_;
      member.key = string();
      skip_whitespace();
      if (at_end() || peek() != ':') fail("expected ':' after object key");
      advance();
      skip_whitespace();
      member.value = value(depth + 1);
      result.members.push_back(std::move(member));
      skip_whitespace();
      if (at_end()) fail("unterminated object");
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == '}') {
        advance();
        return;
      }
      fail("expected ',' or '}' in object");
    }
  }

  void array(Value& result, int depth) {
    advance();  // '['
    skip_whitespace();
    if (!at_end() && peek() == ']') {
      advance();
      return;
    }
    while (true) {
      skip_whitespace();
      result.items.push_back(value(depth + 1));
      skip_whitespace();
      if (at_end()) fail("unterminated array");
      if (peek() == ',') {
        advance();
        continue;
      }
      if (peek() == ']') {
        advance();
        return;
      }
      fail("expected ',' or ']' in array");
    }
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }

  std::uint32_t hex4() {
    std::uint32_t cp = 0;
    for (int i = 0; i < 4; ++i) {
      if (at_end()) fail("truncated \\u escape");
      unsigned char c = peek();
      cp <<= 4;
      if (c >= '0' && c <= '9') {
        cp |= c - '0';
      } else if (c >= 'a' && c <= 'f') {
        cp |= c - 'a' + 10;
      } else if (c >= 'A' && c <= 'F') {
        cp |= c - 'A' + 10;
      } else {
        fail("invalid hex digit in \\u escape");
      }
      advance();
    }
    return cp;
  }

  void escape(std::string& out) {
    advance();  // '\\'
    if (at_end()) fail("unterminated escape");
    unsigned char c = peek();
    advance();
    switch (c) {
      case '"': out += '"'; return;
      case '\\': out += '\\'; return;
      case '/': out += '/'; return;
      case 'b': out += '\b'; return;
      case 'f': out += '\f'; return;
      case 'n': out += '\n'; return;
      case 'r': out += '\r'; return;
      case 't': out += '\t'; return;
      case 'u': break;
      default: fail("invalid escape sequence");
    }
    std::uint32_t cp = hex4();
    if (cp >= 0xDC00 && cp <= 0xDFFF) fail("unpaired low surrogate");
    if (cp >= 0xD800 && cp <= 0xDBFF) {
      if (at_end() || peek() != '\\') fail("unpaired high surrogate");
      advance();
      if (at_end() || peek() != 'u') fail("unpaired high surrogate");
      advance();
      std::uint32_t low = hex4();
      if (low < 0xDC00 || low > 0xDFFF) fail("invalid low surrogate");
      cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
    }
    append_utf8(out, cp);
  }

  // Copies one raw UTF-8 encoded code point, rejecting malformed sequences.
  void raw_code_point(std::string& out) {
    unsigned char lead = peek();
    int extra = 0;
    std::uint32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      fail("invalid UTF-8 lead byte");
    }
    if (offset_ + extra >= text_.size()) fail("truncated UTF-8 sequence");
    for (int i = 1; i <= extra; ++i) {
      unsigned char c = static_cast<unsigned char>(text_[offset_ + i]);
      if ((c & 0xC0) != 0x80) fail("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (c & 0x3F);
    }
    static constexpr std::uint32_t kMinimum[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinimum[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      fail("invalid UTF-8 code point");
    }
    for (int i = 0; i <= extra; ++i) {
      out += text_[offset_];
      advance();
    }
  }

  std::string string() {
    advance();  // opening quote
    std::string out;
    while (true) {
      if (at_end()) fail("unterminated string");
      unsigned char c = peek();
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '\\') {
        escape(out);
      } else if (c < 0x20) {
        fail("control character in string");
      } else {
        raw_code_point(out);
      }
    }
  }

  void number(Value& result) {
    result.kind = Value::Kind::kNumber;
    std::size_t start = offset_;
    bool integral = true;
    auto digits = [&] {
      if (at_end() || peek() < '0' || peek() > '9') fail("expected digit");
      while (!at_end() && peek() >= '0' && peek() <= '9') advance();
    };
    if (peek() == '-') advance();
    if (!at_end() && peek() == '0') {
      advance();
    } else {
      digits();
    }
    if (!at_end() && peek() == '.') {
      integral = false;
      advance();
      digits();
    }
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      integral = false;
      advance();
      if (!at_end() && (peek() == '+' || peek() == '-')) advance();
      digits();
    }
    result.text = std::string(text_.substr(start, offset_ - start));
    if (integral) {
      const char* first = result.text.data();
      const char* last = first + result.text.size();
      auto [ptr, ec] = std::from_chars(first, last, result.integer);
      result.is_integer = ec == std::errc() && ptr == last;
    }
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  Position position_;
};

}  // namespace

std::variant<Value, SyntaxError> parse(std::string_view text) {
  try {
    return Reader(text).document();
  } catch (const Failure& failure) {
    return failure.error;
  }
}

}  // namespace crstip::json_reader

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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "crstip/error.hpp"
#include "crstip/scheme_parser.hpp"
#include "oracles.hpp"

namespace crstip {
namespace {

const ParseDiagnostic* find_code(const ParseResult& result, const std::string& code) {
  for (const auto& d : result.diagnostics) {
    if (d.code == code) return &d;
  }
  return nullptr;
}

std::string canonical_text() { return testing::slurp(testing::source_dir() / "assets" / "crstip.scheme.json"); }

TEST(ParseScheme, BundledFile) {
  ParseResult result = parse_scheme(canonical_text());
  ASSERT_TRUE(result.ok());
  EXPECT_TRUE(result.diagnostics.empty());
  EXPECT_EQ(result.scheme->areas.size(), 4u);
  EXPECT_EQ(result.scheme->areas[0].name, "Legal and compliance assessment");
  EXPECT_EQ(*result.scheme, builtin_scheme());
}

TEST(ParseScheme, EmptyDocument) {
  ParseResult result = parse_scheme("");
  EXPECT_FALSE(result.ok());
  ASSERT_EQ(result.diagnostics.size(), 1u);
  EXPECT_EQ(result.diagnostics[0].code, parse_codes::kSyntax);
  EXPECT_EQ(result.diagnostics[0].line, 1);
  EXPECT_EQ(result.diagnostics[0].column, 1);
}

TEST(ParseScheme, DuplicateRankPointsAtOffendingLine) {
  ParseResult result =
      parse_scheme(testing::slurp(testing::fixture("tooling-ranks-1224.scheme.json")));
  EXPECT_FALSE(result.ok());
  const ParseDiagnostic* dup = find_code(result, "DUPLICATE_RANK");
  const ParseDiagnostic* gap = find_code(result, "NON_CONTIGUOUS_RANKS");
  ASSERT_NE(dup, nullptr);
  ASSERT_NE(gap, nullptr);
  // the mutated "rank": 2 sits on line 223 of the fixture
  EXPECT_EQ(dup->line, 223);
  EXPECT_EQ(gap->line, 204);
}

TEST(ParseScheme, SyntaxErrorPosition) {
  ParseResult result = parse_scheme("{\n  \"id\": \"x\",\n  \"name\" \"y\"\n}");
  ASSERT_EQ(result.diagnostics.size(), 1u);
  EXPECT_EQ(result.diagnostics[0].code, parse_codes::kSyntax);
  EXPECT_EQ(result.diagnostics[0].line, 3);
  EXPECT_EQ(result.diagnostics[0].column, 10);
}

TEST(ParseScheme, TypeMismatchMissingAndDuplicateKeys) {
  std::string text = canonical_text();
  std::string mutated = text;
  mutated.replace(mutated.find("\"version\": \"1.0.0\""), 18, "\"version\": 1");
  EXPECT_NE(find_code(parse_scheme(mutated), parse_codes::kTypeMismatch), nullptr);

  mutated = text;
  mutated.replace(mutated.find("  \"version\": \"1.0.0\",\n"), 22, "");
  EXPECT_NE(find_code(parse_scheme(mutated), parse_codes::kMissingKey), nullptr);

  mutated = text;
  mutated.replace(mutated.find("  \"version\""), 0, "  \"name\": \"again\",\n");
  EXPECT_NE(find_code(parse_scheme(mutated), parse_codes::kDuplicateKey), nullptr);
}

TEST(ParseScheme, UnknownKeyIsWarning) {
  std::string text = canonical_text();
  text.replace(text.find("  \"version\""), 0, "  \"homepage\": \"x\",\n");
  ParseResult result = parse_scheme(text);
  ASSERT_TRUE(result.ok());
  const ParseDiagnostic* d = find_code(result, parse_codes::kUnknownKey);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->severity, Severity::kWarning);
  EXPECT_EQ(d->line, 4);
}

TEST(SerializeScheme, CanonicalIsByteIdentical) {
  EXPECT_EQ(serialize_scheme(builtin_scheme()), canonical_text());
  EXPECT_EQ(serialize_scheme(*parse_scheme(canonical_text()).scheme), canonical_text());
}

TEST(SerializeScheme, MinimalScheme) {
  Scheme s;
  s.id = "x";
  s.name = "X";
  s.version = "1";
  s.areas.push_back(KeyArea{"a", "A", "", {Level{1, "L", "", {}}}});
  std::string text = serialize_scheme(s);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 21);
  EXPECT_EQ(text.substr(text.size() - 24), "  \"prerequisites\": []\n}\n");
  EXPECT_EQ(*parse_scheme(text).scheme, s);
}

TEST(SerializeScheme, RejectsInvalidScheme) {
  Scheme s = builtin_scheme();
  s.areas[0].levels.pop_back();
  s.areas[0].levels.pop_back();
  EXPECT_THROW(serialize_scheme(s), Error);
}

TEST(SerializeScheme, RoundTripRandom) {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    Scheme s = testing::random_scheme(rng);
    std::string text = serialize_scheme(s);
    ParseResult parsed = parse_scheme(text);
    ASSERT_TRUE(parsed.ok()) << text;
    EXPECT_EQ(*parsed.scheme, s);
    EXPECT_EQ(serialize_scheme(*parsed.scheme), text);
  }
}

TEST(ParseScheme, NonCanonicalInputCanonicalizes) {
  std::string text = canonical_text();
  std::string compact;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '"' && (i == 0 || text[i - 1] != '\\')) in_string = !in_string;
    if (!in_string && (c == ' ' || c == '\n')) continue;
    compact += c;
  }
  ParseResult parsed = parse_scheme(compact);
  ASSERT_TRUE(parsed.ok());
  EXPECT_EQ(serialize_scheme(*parsed.scheme), text);
}

TEST(ParseScheme, Utf8AndEscapes) {
  ParseResult bad = parse_scheme("\"\xff\"");
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.diagnostics[0].code, parse_codes::kSyntax);
  ParseResult lone = parse_scheme("\"\\ud800\"");
  ASSERT_FALSE(lone.ok());
  EXPECT_EQ(lone.diagnostics[0].code, parse_codes::kSyntax);
  ParseResult top = parse_scheme("[]");
  ASSERT_FALSE(top.ok());
  EXPECT_EQ(top.diagnostics[0].code, parse_codes::kTypeMismatch);
}

TEST(ParseScheme, DeepNestingDoesNotCrash) {
  std::string deep(100000, '[');
  ParseResult result = parse_scheme(deep);
  EXPECT_FALSE(result.ok());
  EXPECT_EQ(result.diagnostics[0].code, parse_codes::kSyntax);
}

TEST(ParseScheme, MutatedDocumentsDoNotCrash) {
  std::string text = canonical_text();
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::string doc = text;
    int edits = 1 + static_cast<int>(rng() % 8);
    for (int e = 0; e < edits; ++e) {
      std::size_t at = rng() % doc.size();
      switch (rng() % 3) {
        case 0: doc[at] = static_cast<char>(rng() % 256); break;
        case 1: doc.erase(at, 1 + rng() % 16); break;
        default: doc.insert(at, 1, "{}[]\",:0\\"[rng() % 10]); break;
      }
      if (doc.empty()) doc = "x";
    }
    ParseResult result = parse_scheme(doc);
    if (!result.ok()) {
      EXPECT_FALSE(result.diagnostics.empty());
      for (const auto& d : result.diagnostics) {
        EXPECT_GE(d.line, 1);
        EXPECT_GE(d.column, 1);
      }
    } else {
      std::string once = serialize_scheme(*result.scheme);
      EXPECT_EQ(serialize_scheme(*parse_scheme(once).scheme), once);
    }
  }
}

TEST(ParseScheme, RandomBytesUpToOneMebibyte) {
  std::mt19937 rng(17);
  for (std::size_t size : {std::size_t{1}, std::size_t{4096}, std::size_t{1} << 20}) {
    std::string doc(size, '\0');
    for (auto& c : doc) c = static_cast<char>(rng() % 256);
    EXPECT_FALSE(parse_scheme(doc).ok());
  }
  std::string nested;
  for (int i = 0; i < 100000; ++i) nested += "{\"a\":";
  EXPECT_FALSE(parse_scheme(nested).ok());
}

TEST(FormatDiagnostic, Layout) {
  ParseDiagnostic d{Severity::kWarning, "UNKNOWN_KEY", "unknown key 'x'", 3, 5};
  EXPECT_EQ(format_diagnostic(d), "3:5: warning: UNKNOWN_KEY: unknown key 'x'");
}

}  // namespace
}  // namespace crstip

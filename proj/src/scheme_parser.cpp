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

#include "crstip/scheme_parser.hpp"

#include <climits>
#include <initializer_list>
#include <map>
#include <set>

#include <json.hpp>

#include "crstip/error.hpp"
#include "json_reader.hpp"

namespace crstip {

extern const char kBuiltinSchemeText[];
extern const std::size_t kBuiltinSchemeSize;

namespace {

using json_reader::Position;
using json_reader::Value;
using Kind = json_reader::Value::Kind;

class Converter {
 public:
  std::vector<ParseDiagnostic> diagnostics;
  std::map<std::string, Position> positions;

  bool failed() const {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::kError) return true;
    }
    return false;
  }

  Scheme scheme(const Value& root) {
    Scheme result;
    if (!expect_kind(root, Kind::kObject, "document")) return result;
    positions[""] = root.position;
    check_keys(root, {"id", "name", "version", "areas", "prerequisites"}, "document");
    read_string(root, "id", "", result.id);
    read_string(root, "name", "", result.name);
    read_string(root, "version", "", result.version);
    if (const Value* areas = array_field(root, "areas", "")) {
      for (std::size_t i = 0; i < areas->items.size(); ++i) {
        result.areas.push_back(area(areas->items[i], "areas[" + std::to_string(i) + "]"));
      }
    }
    if (const Value* edges = array_field(root, "prerequisites", "")) {
      for (std::size_t e = 0; e < edges->items.size(); ++e) {
        result.prerequisites.push_back(
            edge(edges->items[e], "prerequisites[" + std::to_string(e) + "]"));
      }
    }
    return result;
  }

  Position locate(std::string path) const {
    while (true) {
      if (auto it = positions.find(path); it != positions.end()) return it->second;
      auto cut = path.find_last_of(".[");
      if (cut == std::string::npos) break;
      path.erase(cut);
    }
    auto root = positions.find("");
    return root == positions.end() ? Position{} : root->second;
  }

 private:
  void error(const char* code, std::string message, Position at) {
    diagnostics.push_back({Severity::kError, code, std::move(message), at.line, at.column});
  }

  bool expect_kind(const Value& value, Kind kind, const std::string& what) {
    if (value.kind == kind) return true;
    error(parse_codes::kTypeMismatch,
          what + " must be " + json_reader::kind_name(kind) + ", found " +
              json_reader::kind_name(value.kind),
          value.position);
    return false;
  }

  void check_keys(const Value& object, std::initializer_list<const char*> known,
                  const std::string& what) {
    std::set<std::string> seen;
    for (const auto& member : object.members) {
      if (!seen.insert(member.key).second) {
        error(parse_codes::kDuplicateKey, "duplicate key '" + member.key + "' in " + what,
              member.key_position);
        continue;
      }
      bool recognised = false;
      for (const char* key : known) recognised = recognised || member.key == key;
      if (!recognised) {
        diagnostics.push_back({Severity::kWarning, parse_codes::kUnknownKey,
                               "unknown key '" + member.key + "' in " + what + " is ignored",
                               member.key_position.line, member.key_position.column});
      }
    }
    for (const char* key : known) {
      if (!object.find(key)) {
        error(parse_codes::kMissingKey,
              "missing key '" + std::string(key) + "' in " + what, object.position);
      }
    }
  }

  static std::string join(const std::string& path, const char* key) {
    return path.empty() ? std::string(key) : path + "." + key;
  }

  const Value* field(const Value& object, const char* key, const std::string& path) {
    const json_reader::Member* member = object.find(key);
    if (!member) return nullptr;
    positions[join(path, key)] = member->value.position;
    return &member->value;
  }

  void read_string(const Value& object, const char* key, const std::string& path,
                   std::string& out) {
    const Value* value = field(object, key, path);
    if (value && expect_kind(*value, Kind::kString, "'" + std::string(key) + "'")) {
      out = value->text;
    }
  }

  void read_int(const Value& object, const char* key, const std::string& path, int& out) {
    const Value* value = field(object, key, path);
    if (!value || !expect_kind(*value, Kind::kNumber, "'" + std::string(key) + "'")) return;
    if (!value->is_integer || value->integer < INT_MIN || value->integer > INT_MAX) {
      error(parse_codes::kTypeMismatch,
            "'" + std::string(key) + "' must be an integer, found " + value->text,
            value->position);
      return;
    }
    out = static_cast<int>(value->integer);
  }

  const Value* array_field(const Value& object, const char* key, const std::string& path) {
    const Value* value = field(object, key, path);
    if (!value || !expect_kind(*value, Kind::kArray, "'" + std::string(key) + "'")) {
      return nullptr;
    }
    return value;
  }

  KeyArea area(const Value& value, const std::string& path) {
    KeyArea result;
    positions[path] = value.position;
    if (!expect_kind(value, Kind::kObject, path)) return result;
    check_keys(value, {"id", "name", "description", "levels"}, path);
    read_string(value, "id", path, result.id);
    read_string(value, "name", path, result.name);
    read_string(value, "description", path, result.description);
    if (const Value* levels = array_field(value, "levels", path)) {
      for (std::size_t j = 0; j < levels->items.size(); ++j) {
        result.levels.push_back(level(levels->items[j],
                                      path + ".levels[" + std::to_string(j) + "]", result.id));
      }
    }
    return result;
  }

  Level level(const Value& value, const std::string& path, const std::string& area_id) {
    Level result;
    positions[path] = value.position;
    if (!expect_kind(value, Kind::kObject, path)) return result;
    check_keys(value, {"rank", "name", "description", "indicators"}, path);
    read_int(value, "rank", path, result.rank);
    read_string(value, "name", path, result.name);
    read_string(value, "description", path, result.description);
    if (const Value* indicators = array_field(value, "indicators", path)) {
      for (std::size_t k = 0; k < indicators->items.size(); ++k) {
        const Value& item = indicators->items[k];
        const std::string ipath = path + ".indicators[" + std::to_string(k) + "]";
        positions[ipath] = item.position;
        Indicator indicator;
        indicator.level = AreaLevel{area_id, result.rank};
        if (expect_kind(item, Kind::kObject, ipath)) {
          check_keys(item, {"id", "statement"}, ipath);
          read_string(item, "id", ipath, indicator.id);
          read_string(item, "statement", ipath, indicator.statement);
        }
        result.indicators.push_back(std::move(indicator));
      }
    }
    return result;
  }

  AreaLevel coordinate(const Value& object, const char* key, const std::string& path) {
    AreaLevel result;
    const Value* value = field(object, key, path);
    if (!value) return result;
    const std::string cpath = join(path, key);
    if (!expect_kind(*value, Kind::kObject, cpath)) return result;
    check_keys(*value, {"area", "rank"}, cpath);
    read_string(*value, "area", cpath, result.area);
    read_int(*value, "rank", cpath, result.rank);
    return result;
  }

  PrerequisiteEdge edge(const Value& value, const std::string& path) {
    PrerequisiteEdge result;
    positions[path] = value.position;
    if (!expect_kind(value, Kind::kObject, path)) return result;
    check_keys(value, {"subject", "requires", "rationale"}, path);
    result.subject = coordinate(value, "subject", path);
    result.requires_level = coordinate(value, "requires", path);
    read_string(value, "rationale", path, result.rationale);
    return result;
  }
};

nlohmann::ordered_json coordinate_json(const AreaLevel& coordinate) {
  nlohmann::ordered_json out;
  out["area"] = coordinate.area;
  out["rank"] = coordinate.rank;
  return out;
}

}  // namespace

ParseResult parse_scheme(std::string_view text) {
  ParseResult result;
  auto parsed = json_reader::parse(text);
  if (auto* syntax = std::get_if<json_reader::SyntaxError>(&parsed)) {
    result.diagnostics.push_back({Severity::kError, parse_codes::kSyntax, syntax->message,
                                  syntax->position.line, syntax->position.column});
    return result;
  }
  Converter converter;
  Scheme scheme = converter.scheme(std::get<json_reader::Value>(parsed));
  if (!converter.failed()) {
    for (const auto& issue : validate_scheme(scheme)) {
      Position at = converter.locate(issue.path);
      converter.diagnostics.push_back({Severity::kError, issue.code,
                                       issue.message + " (at " + issue.path + ")", at.line,
                                       at.column});
    }
  }
  if (!converter.failed()) result.scheme = std::move(scheme);
  result.diagnostics = std::move(converter.diagnostics);
  return result;
}

std::string serialize_scheme(const Scheme& scheme) {
  require_valid(scheme);
  nlohmann::ordered_json doc;
  doc["id"] = scheme.id;
  doc["name"] = scheme.name;
  doc["version"] = scheme.version;
  doc["areas"] = nlohmann::ordered_json::array();
  for (const auto& area : scheme.areas) {
    nlohmann::ordered_json a;
    a["id"] = area.id;
    a["name"] = area.name;
    a["description"] = area.description;
    a["levels"] = nlohmann::ordered_json::array();
    for (const auto& level : area.levels) {
      nlohmann::ordered_json l;
      l["rank"] = level.rank;
      l["name"] = level.name;
      l["description"] = level.description;
      l["indicators"] = nlohmann::ordered_json::array();
      for (const auto& indicator : level.indicators) {
        nlohmann::ordered_json i;
        i["id"] = indicator.id;
        i["statement"] = indicator.statement;
        l["indicators"].push_back(std::move(i));
      }
      a["levels"].push_back(std::move(l));
    }
    doc["areas"].push_back(std::move(a));
  }
  doc["prerequisites"] = nlohmann::ordered_json::array();
  for (const auto& edge : scheme.prerequisites) {
    nlohmann::ordered_json e;
    e["subject"] = coordinate_json(edge.subject);
    e["requires"] = coordinate_json(edge.requires_level);
    e["rationale"] = edge.rationale;
    doc["prerequisites"].push_back(std::move(e));
  }
  return doc.dump(2) + "\n";
}

std::string format_diagnostic(const ParseDiagnostic& diagnostic) {
  return std::to_string(diagnostic.line) + ":" + std::to_string(diagnostic.column) + ": " +
         (diagnostic.severity == Severity::kError ? "error" : "warning") + ": " +
         diagnostic.code + ": " + diagnostic.message;
}

std::string_view builtin_scheme_text() {
  return std::string_view(kBuiltinSchemeText, kBuiltinSchemeSize);
}

const Scheme& builtin_scheme() {
  static const Scheme scheme = [] {
    ParseResult result = parse_scheme(builtin_scheme_text());
    if (!result.ok()) {
      throw Error(codes::kInvalidScheme, "bundled scheme is invalid: " +
                                             format_diagnostic(result.diagnostics.front()));
    }
    return std::move(*result.scheme);
  }();
  return scheme;
}

}  // namespace crstip

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

#include "crstip/codec.hpp"

#include <climits>

#include "crstip/error.hpp"

namespace crstip {

std::string canonical_dump(const Json& document) { return document.dump(2) + "\n"; }

Json to_json(const AreaLevel& coordinate) {
  Json out;
  out["area"] = coordinate.area;
  out["rank"] = coordinate.rank;
  return out;
}

Json to_json(const SubjectInfo& subject) {
  Json out;
  out["name"] = subject.name;
  out["kind"] = std::string(to_string(subject.kind));
  out["notes"] = subject.notes;
  return out;
}

Json to_json(const AssessmentSession& session) {
  Json out;
  out["id"] = session.id;
  out["scheme_id"] = session.scheme_id;
  out["scheme_version"] = session.scheme_version;
  out["subject"] = to_json(session.subject);
  out["answers"] = Json::object();
  for (const auto& [indicator, answer] : session.answers) {
    Json a;
    a["value"] = std::string(to_string(answer.value));
    a["note"] = answer.note;
    a["answered_at"] = answer.answered_at;
    out["answers"][indicator] = std::move(a);
  }
  out["created"] = session.created;
  out["modified"] = session.modified;
  return out;
}

Json session_summary_json(const AssessmentSession& session) {
  Json out;
  out["id"] = session.id;
  out["scheme_id"] = session.scheme_id;
  out["scheme_version"] = session.scheme_version;
  out["subject"] = to_json(session.subject);
  out["answer_count"] = session.answers.size();
  out["created"] = session.created;
  out["modified"] = session.modified;
  return out;
}

Json to_json(const Profile& profile) {
  Json out;
  out["scheme_id"] = profile.scheme_id;
  out["scheme_version"] = profile.scheme_version;
  out["subject"] = to_json(profile.subject);
  out["areas"] = Json::array();
  for (const auto& area : profile.areas) {
    Json a;
    a["area"] = area.area;
    a["raw_level"] = area.raw_level;
    a["effective_level"] = area.effective_level;
    a["completeness"] = area.completeness;
    a["satisfied"] = area.satisfied;
    out["areas"].push_back(std::move(a));
  }
  return out;
}

Json to_json(const std::vector<ConsistencyViolation>& violations) {
  Json out = Json::array();
  for (const auto& violation : violations) {
    Json v;
    v["subject"] = to_json(violation.subject);
    v["requires"] = to_json(violation.requires_level);
    v["observed_rank"] = violation.observed_rank;
    out.push_back(std::move(v));
  }
  return out;
}

Json profile_report_json(const Profile& profile,
                         const std::vector<ConsistencyViolation>& violations) {
  Json out;
  out["profile"] = to_json(profile);
  out["violations"] = to_json(violations);
  return out;
}

Json to_json(const GapReport& report) {
  Json out;
  out["areas"] = Json::array();
  for (const auto& area : report.areas) {
    Json a;
    a["area"] = area.area;
    a["current_level"] = area.current_level;
    a["target_level"] = area.target_level;
    a["indicators"] = Json::array();
    for (const auto& indicator : area.indicators) {
      Json i;
      i["id"] = indicator.id;
      i["statement"] = indicator.statement;
      i["rank"] = indicator.rank;
      i["state"] = indicator.state ? std::string(to_string(*indicator.state)) : "unanswered";
      a["indicators"].push_back(std::move(i));
    }
    out["areas"].push_back(std::move(a));
  }
  return out;
}

Json to_json(const Roadmap& roadmap) {
  Json out;
  out["steps"] = Json::array();
  for (const auto& step : roadmap.steps) {
    Json s;
    s["index"] = step.index;
    s["reached"] = to_json(step.reached);
    s["indicators"] = Json::array();
    for (const auto& indicator : step.indicators) {
      Json i;
      i["id"] = indicator.id;
      i["statement"] = indicator.statement;
      s["indicators"].push_back(std::move(i));
    }
    s["discharged"] = Json::array();
    for (const auto& discharged : step.discharged) {
      Json d = to_json(discharged.requirement);
      d["step"] = discharged.step;
      s["discharged"].push_back(std::move(d));
    }
    out["steps"].push_back(std::move(s));
  }
  return out;
}

Json to_json(const ProfileDiff& diff) {
  Json out;
  out["scheme_id"] = diff.scheme_id;
  out["scheme_version"] = diff.scheme_version;
  out["areas"] = Json::array();
  for (const auto& area : diff.areas) {
    Json a;
    a["area"] = area.area;
    a["before"] = area.before;
    a["after"] = area.after;
    a["delta"] = area.delta;
    a["newly_satisfied"] = area.newly_satisfied;
    out["areas"].push_back(std::move(a));
  }
  Json summary;
  summary["improved"] = diff.improved;
  summary["regressed"] = diff.regressed;
  summary["unchanged"] = diff.unchanged;
  summary["newly_satisfied"] = diff.newly_satisfied;
  out["summary"] = std::move(summary);
  return out;
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(codes::kValidation, what); }

const Json& member(const Json& object, const char* key, const std::string& where) {
  if (!object.is_object()) invalid(where + " must be an object");
  auto it = object.find(key);
  if (it == object.end()) invalid(where + " lacks '" + key + "'");
  return *it;
}

std::string string_field(const Json& object, const char* key, const std::string& where) {
  const Json& value = member(object, key, where);
  if (!value.is_string()) invalid(where + "." + key + " must be a string");
  return value.get<std::string>();
}

int int_field(const Json& object, const char* key, const std::string& where) {
  const Json& value = member(object, key, where);
  if (!value.is_number_integer()) invalid(where + "." + key + " must be an integer");
  auto n = value.get<long long>();
  if (n < INT_MIN || n > INT_MAX) invalid(where + "." + key + " is out of range");
  return static_cast<int>(n);
}

std::string timestamp_field(const Json& object, const char* key, const std::string& where) {
  std::string text = string_field(object, key, where);
  if (!parse_timestamp(text)) invalid(where + "." + key + " is not an RFC 3339 UTC timestamp");
  return text;
}

}  // namespace

AreaLevel area_level_from_json(const Json& document) {
  return AreaLevel{string_field(document, "area", "coordinate"),
                   int_field(document, "rank", "coordinate")};
}

SubjectInfo subject_from_json(const Json& document) {
  SubjectInfo subject;
  subject.name = string_field(document, "name", "subject");
  auto kind = parse_subject_kind(string_field(document, "kind", "subject"));
  if (!kind) invalid("subject.kind must be organization, process or system");
  subject.kind = *kind;
  subject.notes = string_field(document, "notes", "subject");
  return subject;
}

AssessmentSession session_from_json(const Json& document) {
  AssessmentSession session;
  session.id = string_field(document, "id", "session");
  if (session.id.empty()) invalid("session.id is empty");
  session.scheme_id = string_field(document, "scheme_id", "session");
  session.scheme_version = string_field(document, "scheme_version", "session");
  session.subject = subject_from_json(member(document, "subject", "session"));
  const Json& answers = member(document, "answers", "session");
  if (!answers.is_object()) invalid("session.answers must be an object");
  for (const auto& [indicator, entry] : answers.items()) {
    const std::string where = "session.answers." + indicator;
    Answer answer;
    auto value = parse_answer_value(string_field(entry, "value", where));
    if (!value) invalid(where + ".value must be yes, no or unknown");
    answer.value = *value;
    answer.note = string_field(entry, "note", where);
    answer.answered_at = timestamp_field(entry, "answered_at", where);
    session.answers.emplace(indicator, std::move(answer));
  }
  session.created = timestamp_field(document, "created", "session");
  session.modified = timestamp_field(document, "modified", "session");
  return session;
}

Profile profile_from_json(const Json& document) {
  Profile profile;
  profile.scheme_id = string_field(document, "scheme_id", "profile");
  profile.scheme_version = string_field(document, "scheme_version", "profile");
  profile.subject = subject_from_json(member(document, "subject", "profile"));
  const Json& areas = member(document, "areas", "profile");
  if (!areas.is_array()) invalid("profile.areas must be an array");
  for (std::size_t i = 0; i < areas.size(); ++i) {
    const std::string where = "profile.areas[" + std::to_string(i) + "]";
    const Json& entry = areas[i];
    AreaProfile area;
    area.area = string_field(entry, "area", where);
    area.raw_level = int_field(entry, "raw_level", where);
    area.effective_level = int_field(entry, "effective_level", where);
    if (area.effective_level < 1 || area.effective_level > area.raw_level) {
      invalid(where + " must satisfy 1 <= effective_level <= raw_level");
    }
    const Json& completeness = member(entry, "completeness", where);
    if (!completeness.is_number()) invalid(where + ".completeness must be a number");
    area.completeness = completeness.get<double>();
    if (!(area.completeness >= 0.0 && area.completeness <= 1.0)) {
      invalid(where + ".completeness must lie in [0, 1]");
    }
    const Json& satisfied = member(entry, "satisfied", where);
    if (!satisfied.is_array()) invalid(where + ".satisfied must be an array");
    for (const auto& id : satisfied) {
      if (!id.is_string()) invalid(where + ".satisfied must hold strings");
      area.satisfied.push_back(id.get<std::string>());
    }
    profile.areas.push_back(std::move(area));
  }
  return profile;
}

}  // namespace crstip

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

#include "crstip/engine.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <queue>
#include <random>

#include "crstip/error.hpp"

namespace crstip {

std::string_view to_string(AnswerValue value) {
  switch (value) {
    case AnswerValue::kYes: return "yes";
    case AnswerValue::kNo: return "no";
    case AnswerValue::kUnknown: return "unknown";
  }
  return "unknown";
}

std::optional<AnswerValue> parse_answer_value(std::string_view text) {
  if (text == "yes") return AnswerValue::kYes;
  if (text == "no") return AnswerValue::kNo;
  if (text == "unknown") return AnswerValue::kUnknown;
  return std::nullopt;
}

std::string_view to_string(SubjectKind kind) {
  switch (kind) {
    case SubjectKind::kOrganization: return "organization";
    case SubjectKind::kProcess: return "process";
    case SubjectKind::kSystem: return "system";
  }
  return "system";
}

std::optional<SubjectKind> parse_subject_kind(std::string_view text) {
  if (text == "organization") return SubjectKind::kOrganization;
  if (text == "process") return SubjectKind::kProcess;
  if (text == "system") return SubjectKind::kSystem;
  return std::nullopt;
}

std::string format_timestamp(long long unix_millis) {
  std::time_t seconds = static_cast<std::time_t>(unix_millis / 1000);
  int millis = static_cast<int>(unix_millis % 1000);
  if (millis < 0) {
    millis += 1000;
    --seconds;
  }
  std::tm tm{};
  gmtime_r(&seconds, &tm);
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ",
                tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                tm.tm_sec, millis);
  return buffer;
}

std::optional<long long> parse_timestamp(std::string_view text) {
  auto number = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    if (pos + len > text.size()) return std::nullopt;
    int value = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      value = value * 10 + (text[i] - '0');
    }
    return value;
  };
  auto expect = [&](std::size_t pos, char c) { return pos < text.size() && text[pos] == c; };
  auto year = number(0, 4), month = number(5, 2), day = number(8, 2);
  auto hour = number(11, 2), minute = number(14, 2), second = number(17, 2);
  if (!year || !month || !day || !hour || !minute || !second || !expect(4, '-') ||
      !expect(7, '-') || !expect(10, 'T') || !expect(13, ':') || !expect(16, ':')) {
    return std::nullopt;
  }
  int millis = 0;
  std::size_t pos = 19;
  if (expect(pos, '.')) {
    auto fraction = number(pos + 1, 3);
    if (!fraction) return std::nullopt;
    millis = *fraction;
    pos += 4;
  }
  if (!expect(pos, 'Z') || pos + 1 != text.size()) return std::nullopt;
  if (*month < 1 || *month > 12 || *day < 1 || *day > 31 || *hour > 23 || *minute > 59 ||
      *second > 60) {
    return std::nullopt;
  }
  std::tm tm{};
  tm.tm_year = *year - 1900;
  tm.tm_mon = *month - 1;
  tm.tm_mday = *day;
  tm.tm_hour = *hour;
  tm.tm_min = *minute;
  tm.tm_sec = *second;
  return static_cast<long long>(timegm(&tm)) * 1000 + millis;
}

namespace {

std::string random_uuid() {
  thread_local std::mt19937_64 engine{[] {
    std::random_device device;
    std::seed_seq seed{device(), device(), device(), device()};
    return std::mt19937_64(seed);
  }()};
  std::uint64_t hi = engine();
  std::uint64_t lo = engine();
  hi = (hi & 0xFFFFFFFFFFFF0FFFULL) | 0x0000000000004000ULL;  // version 4
  lo = (lo & 0x3FFFFFFFFFFFFFFFULL) | 0x8000000000000000ULL;  // RFC 4122 variant
  char buffer[37];
  std::snprintf(buffer, sizeof buffer, "%08llx-%04llx-%04llx-%04llx-%012llx",
                static_cast<unsigned long long>(hi >> 32),
                static_cast<unsigned long long>((hi >> 16) & 0xFFFF),
                static_cast<unsigned long long>(hi & 0xFFFF),
                static_cast<unsigned long long>(lo >> 48),
                static_cast<unsigned long long>(lo & 0xFFFFFFFFFFFFULL));
  return buffer;
}

void require_matching(const Scheme& scheme, const std::string& scheme_id,
                      const std::string& scheme_version) {
  if (scheme.id != scheme_id || scheme.version != scheme_version) {
    throw Error(codes::kSchemeMismatch, "document belongs to scheme " + scheme_id + "@" +
                                            scheme_version + ", not " + scheme.id + "@" +
                                            scheme.version);
  }
}

const KeyArea& require_area(const Scheme& scheme, std::string_view area_id) {
  const KeyArea* area = scheme.find_area(area_id);
  if (!area) throw Error(codes::kUnknownArea, "unknown area '" + std::string(area_id) + "'");
  return *area;
}

bool is_yes(const AssessmentSession& session, const std::string& indicator_id) {
  auto it = session.answers.find(indicator_id);
  return it != session.answers.end() && it->second.value == AnswerValue::kYes;
}

int staged_level(const KeyArea& area, const AssessmentSession& session) {
  int level = 1;
  for (int rank = 2; rank <= area.max_rank(); ++rank) {
    const Level* step = area.find_level(rank);
    if (!step) break;
    for (const auto& indicator : step->indicators) {
      if (!is_yes(session, indicator.id)) return level;
    }
    level = rank;
  }
  return level;
}

// Caps each area's level until every explicit prerequisite of every attained
// rank is met by the requirement's capped level. Levels only decrease, so
// the loop terminates.
std::vector<int> effective_levels(const Scheme& scheme, const std::vector<int>& raw) {
  std::vector<int> effective = raw;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < scheme.areas.size(); ++i) {
      const std::string& area_id = scheme.areas[i].id;
      int capped = effective[i];
      for (int rank = 2; rank <= effective[i] && capped == effective[i]; ++rank) {
        for (const auto& edge : scheme.prerequisites) {
          if (edge.subject != AreaLevel{area_id, rank}) continue;
          auto required = scheme.area_index(edge.requires_level.area);
          if (required && effective[*required] < edge.requires_level.rank) {
            capped = rank - 1;
            break;
          }
        }
      }
      if (capped != effective[i]) {
        effective[i] = capped;
        changed = true;
      }
    }
  }
  return effective;
}

std::vector<ConsistencyViolation> violations_for(const Scheme& scheme,
                                                 const std::vector<int>& raw) {
  std::vector<ConsistencyViolation> result;
  for (const auto& edge : scheme.prerequisites) {
    auto subject = scheme.area_index(edge.subject.area);
    auto required = scheme.area_index(edge.requires_level.area);
    if (!subject || !required) continue;
    if (edge.subject.rank <= raw[*subject] && raw[*required] < edge.requires_level.rank) {
      result.push_back({edge.subject, edge.requires_level, raw[*required]});
    }
  }
  return result;
}

void check_targets(const Scheme& scheme, const Targets& targets) {
  for (const auto& [area_id, rank] : targets) {
    if (!scheme.contains(AreaLevel{area_id, rank})) {
      throw Error(codes::kUnknownAreaLevel,
                  "unknown target coordinate " + to_string(AreaLevel{area_id, rank}));
    }
  }
}

// Highest rank demanded per area once targets are closed under prerequisites.
std::map<std::string, int> required_ranks(const Scheme& scheme, const Targets& targets) {
  check_targets(scheme, targets);
  std::set<AreaLevel> coordinates;
  for (const auto& [area_id, rank] : targets) coordinates.insert(AreaLevel{area_id, rank});
  std::map<std::string, int> required;
  for (const auto& coordinate : prerequisite_closure(scheme, coordinates)) {
    int& rank = required[coordinate.area];
    rank = std::max(rank, coordinate.rank);
  }
  return required;
}

}  // namespace

SessionEnvironment system_environment() {
  return SessionEnvironment{
      [] {
        auto now = std::chrono::time_point_cast<std::chrono::milliseconds>(
            std::chrono::system_clock::now());
        return format_timestamp(now.time_since_epoch().count());
      },
      random_uuid};
}

SessionEnvironment fixed_environment(std::string id, std::string timestamp) {
  return SessionEnvironment{[timestamp] { return timestamp; }, [id] { return id; }};
}

const AreaProfile* Profile::find(std::string_view area_id) const {
  for (const auto& area : areas) {
    if (area.area == area_id) return &area;
  }
  return nullptr;
}

Targets parse_targets(const Scheme& scheme, std::string_view text) {
  Targets targets;
  if (text.empty()) throw Error(codes::kValidation, "empty target list");
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(codes::kValidation, "target '" + std::string(item) + "' is not area=rank");
    }
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    int rank = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), rank);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw Error(codes::kValidation, "target rank '" + std::string(value) + "' is not an integer");
    }
    if (key == "all") {
      for (const auto& area : scheme.areas) targets[area.id] = rank;
    } else {
      targets[std::string(key)] = rank;
    }
    start = end + 1;
  }
  check_targets(scheme, targets);
  return targets;
}

AssessmentSession start_session(const Scheme& scheme, SubjectInfo subject,
                                const SessionEnvironment& env) {
  require_valid(scheme);
  AssessmentSession session;
  session.id = env.new_id();
  session.scheme_id = scheme.id;
  session.scheme_version = scheme.version;
  session.subject = std::move(subject);
  session.created = env.now();
  session.modified = session.created;
  return session;
}

AssessmentSession record_answer(const Scheme& scheme, AssessmentSession session,
                                std::string_view indicator_id, AnswerValue value,
                                std::string note, const SessionEnvironment& env) {
  require_matching(scheme, session.scheme_id, session.scheme_version);
  if (!scheme.find_indicator(indicator_id)) {
    throw Error(codes::kUnknownIndicator,
                "unknown indicator '" + std::string(indicator_id) + "'");
  }
  auto existing = session.answers.find(std::string(indicator_id));
  if (existing != session.answers.end() && existing->second.value == value &&
      existing->second.note == note) {
    return session;
  }
  std::string now = env.now();
  auto previous = parse_timestamp(session.modified);
  auto current = parse_timestamp(now);
  if (previous && current && *current <= *previous) now = format_timestamp(*previous + 1);
  session.modified = now;
  session.answers[std::string(indicator_id)] = Answer{value, std::move(note), std::move(now)};
  return session;
}

int raw_level(const Scheme& scheme, const AssessmentSession& session,
              std::string_view area_id) {
  return staged_level(require_area(scheme, area_id), session);
}

Profile compute_profile(const Scheme& scheme, const AssessmentSession& session) {
  require_matching(scheme, session.scheme_id, session.scheme_version);
  std::vector<int> raw;
  for (const auto& area : scheme.areas) raw.push_back(staged_level(area, session));
  std::vector<int> effective = effective_levels(scheme, raw);

  Profile profile;
  profile.scheme_id = scheme.id;
  profile.scheme_version = scheme.version;
  profile.subject = session.subject;
  for (std::size_t i = 0; i < scheme.areas.size(); ++i) {
    const KeyArea& area = scheme.areas[i];
    AreaProfile entry;
    entry.area = area.id;
    entry.raw_level = raw[i];
    entry.effective_level = effective[i];
    std::size_t total = 0, answered = 0;
    for (const auto& level : area.levels) {
      for (const auto& indicator : level.indicators) {
        ++total;
        auto it = session.answers.find(indicator.id);
        if (it == session.answers.end()) continue;
        if (it->second.value != AnswerValue::kUnknown) ++answered;
        if (it->second.value == AnswerValue::kYes) entry.satisfied.push_back(indicator.id);
      }
    }
    entry.completeness =
        total == 0 ? 1.0 : static_cast<double>(answered) / static_cast<double>(total);
    profile.areas.push_back(std::move(entry));
  }
  return profile;
}

std::vector<ConsistencyViolation> check_consistency(const Scheme& scheme,
                                                    const AssessmentSession& session) {
  require_matching(scheme, session.scheme_id, session.scheme_version);
  std::vector<int> raw;
  for (const auto& area : scheme.areas) raw.push_back(staged_level(area, session));
  return violations_for(scheme, raw);
}

std::vector<ConsistencyViolation> check_consistency(const Scheme& scheme,
                                                    const Profile& profile) {
  require_matching(scheme, profile.scheme_id, profile.scheme_version);
  std::vector<int> raw;
  for (const auto& area : scheme.areas) {
    const AreaProfile* entry = profile.find(area.id);
    if (!entry) throw Error(codes::kUnknownArea, "profile lacks area '" + area.id + "'");
    raw.push_back(entry->raw_level);
  }
  return violations_for(scheme, raw);
}

GapReport gap_analysis(const Scheme& scheme, const AssessmentSession& session,
                       const Targets& targets) {
  Profile profile = compute_profile(scheme, session);
  std::map<std::string, int> required = required_ranks(scheme, targets);
  GapReport report;
  for (std::size_t i = 0; i < scheme.areas.size(); ++i) {
    const KeyArea& area = scheme.areas[i];
    AreaGap gap;
    gap.area = area.id;
    gap.current_level = profile.areas[i].effective_level;
    auto it = required.find(area.id);
    gap.target_level = it == required.end() ? 1 : it->second;
    for (int rank = gap.current_level + 1; rank <= gap.target_level; ++rank) {
      for (const auto& indicator : area.find_level(rank)->indicators) {
        auto answer = session.answers.find(indicator.id);
        if (answer != session.answers.end() && answer->second.value == AnswerValue::kYes) {
          continue;
        }
        GapIndicator entry{indicator.id, indicator.statement, rank, std::nullopt};
        if (answer != session.answers.end()) entry.state = answer->second.value;
        gap.indicators.push_back(std::move(entry));
      }
    }
    report.areas.push_back(std::move(gap));
  }
  return report;
}

Roadmap build_roadmap(const Scheme& scheme, const Profile& current, const Targets& targets) {
  require_matching(scheme, current.scheme_id, current.scheme_version);
  std::map<std::string, const AreaProfile*> levels;
  for (const auto& area : scheme.areas) {
    const AreaProfile* entry = current.find(area.id);
    if (!entry) throw Error(codes::kUnknownArea, "profile lacks area '" + area.id + "'");
    if (entry->raw_level != entry->effective_level) {
      throw Error(codes::kInconsistentProfile,
                  "area '" + area.id + "' has raw level " + std::to_string(entry->raw_level) +
                      " but effective level " + std::to_string(entry->effective_level));
    }
    levels[area.id] = entry;
  }
  check_targets(scheme, targets);

  std::set<AreaLevel> wanted;
  for (const auto& [area_id, rank] : targets) wanted.insert(AreaLevel{area_id, rank});
  std::vector<AreaLevel> missing;
  for (const auto& coordinate : prerequisite_closure(scheme, wanted)) {
    if (coordinate.rank > levels[coordinate.area]->effective_level) {
      missing.push_back(coordinate);
    }
  }
  std::set<AreaLevel> pending(missing.begin(), missing.end());

  // Kahn's algorithm; ready nodes leave in (area order, rank) order.
  auto key = [&](const AreaLevel& c) {
    return std::pair<std::size_t, int>{*scheme.area_index(c.area), c.rank};
  };
  std::map<AreaLevel, int> unmet;
  std::map<AreaLevel, std::vector<AreaLevel>> dependents;
  for (const auto& node : missing) {
    unmet[node] = 0;
    for (const auto& requirement : direct_prerequisites(scheme, node)) {
      if (pending.contains(requirement)) {
        ++unmet[node];
        dependents[requirement].push_back(node);
      }
    }
  }
  using Entry = std::pair<std::pair<std::size_t, int>, AreaLevel>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (const auto& node : missing) {
    if (unmet[node] == 0) ready.push({key(node), node});
  }

  Roadmap roadmap;
  std::map<AreaLevel, int> step_of;
  while (!ready.empty()) {
    AreaLevel node = ready.top().second;
    ready.pop();
    RoadmapStep step;
    step.index = static_cast<int>(roadmap.steps.size()) + 1;
    step.reached = node;
    const auto& satisfied = levels[node.area]->satisfied;
    for (const auto& indicator : scheme.find_level(node)->indicators) {
      if (std::find(satisfied.begin(), satisfied.end(), indicator.id) == satisfied.end()) {
        step.indicators.push_back({indicator.id, indicator.statement});
      }
    }
    for (const auto& requirement : direct_prerequisites(scheme, node)) {
      if (auto it = step_of.find(requirement); it != step_of.end()) {
        step.discharged.push_back({requirement, it->second});
      }
    }
    step_of[node] = step.index;
    roadmap.steps.push_back(std::move(step));
    for (const auto& dependent : dependents[node]) {
      if (--unmet[dependent] == 0) ready.push({key(dependent), dependent});
    }
  }
  return roadmap;
}

}  // namespace crstip

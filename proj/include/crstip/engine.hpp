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
/// Assessment sessions, staged scoring, gap analysis and roadmaps.
///
/// Scoring is cumulative: an area sits at level L when every indicator of
/// every rank 2..L is answered yes. Anything else (no, unknown, unanswered)
/// fails the rank. The raw level is then capped by cross-area prerequisites
/// to give the effective level.
///
/// Sessions are values; `record_answer` returns a new session.

#ifndef CRSTIP_ENGINE_HPP
#define CRSTIP_ENGINE_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crstip/scheme.hpp"

namespace crstip {

enum class AnswerValue { kYes, kNo, kUnknown };
enum class SubjectKind { kOrganization, kProcess, kSystem };

std::string_view to_string(AnswerValue value);
std::optional<AnswerValue> parse_answer_value(std::string_view text);
std::string_view to_string(SubjectKind kind);
std::optional<SubjectKind> parse_subject_kind(std::string_view text);

struct SubjectInfo {
  std::string name;
  SubjectKind kind = SubjectKind::kSystem;
  std::string notes;

  friend bool operator==(const SubjectInfo&, const SubjectInfo&) = default;
};

struct Answer {
  AnswerValue value = AnswerValue::kUnknown;
  std::string note;
  std::string answered_at;  // RFC 3339, UTC

  friend bool operator==(const Answer&, const Answer&) = default;
};

struct AssessmentSession {
  std::string id;
  std::string scheme_id;
  std::string scheme_version;
  SubjectInfo subject;
  std::map<std::string, Answer> answers;  // keyed by indicator id
  std::string created;
  std::string modified;

  friend bool operator==(const AssessmentSession&, const AssessmentSession&) = default;
};

/// Source of session ids and timestamps. Tests and scripted CLI runs pin
/// both to get reproducible documents.
struct SessionEnvironment {
  std::function<std::string()> now;     // RFC 3339 UTC with milliseconds
  std::function<std::string()> new_id;  // UUID text
};

/// Wall clock plus random version-4 UUIDs.
SessionEnvironment system_environment();
/// Constant clock and a fixed id.
SessionEnvironment fixed_environment(std::string id, std::string timestamp);

std::string format_timestamp(long long unix_millis);
/// Returns nullopt unless `text` is "YYYY-MM-DDTHH:MM:SS[.fff]Z".
std::optional<long long> parse_timestamp(std::string_view text);

struct AreaProfile {
  std::string area;
  int raw_level = 1;
  int effective_level = 1;
  double completeness = 0.0;
  std::vector<std::string> satisfied;  // yes-answered indicator ids, scheme order

  friend bool operator==(const AreaProfile&, const AreaProfile&) = default;
};

struct Profile {
  std::string scheme_id;
  std::string scheme_version;
  SubjectInfo subject;
  std::vector<AreaProfile> areas;  // scheme order

  const AreaProfile* find(std::string_view area_id) const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

struct ConsistencyViolation {
  AreaLevel subject;
  AreaLevel requires_level;
  int observed_rank = 1;

  friend bool operator==(const ConsistencyViolation&, const ConsistencyViolation&) = default;
};

struct GapIndicator {
  std::string id;
  std::string statement;
  int rank = 2;
  std::optional<AnswerValue> state;  // nullopt = unanswered

  friend bool operator==(const GapIndicator&, const GapIndicator&) = default;
};

struct AreaGap {
  std::string area;
  int current_level = 1;
  int target_level = 1;
  std::vector<GapIndicator> indicators;

  friend bool operator==(const AreaGap&, const AreaGap&) = default;
};

struct GapReport {
  std::vector<AreaGap> areas;  // scheme order

  friend bool operator==(const GapReport&, const GapReport&) = default;
};

struct IndicatorRef {
  std::string id;
  std::string statement;

  friend bool operator==(const IndicatorRef&, const IndicatorRef&) = default;
};

/// A requirement of a step that an earlier step reached.
struct DischargedRequirement {
  AreaLevel requirement;
  int step = 0;

  friend bool operator==(const DischargedRequirement&, const DischargedRequirement&) = default;
};

struct RoadmapStep {
  int index = 0;  // 1-based
  AreaLevel reached;
  std::vector<IndicatorRef> indicators;  // the rank's indicators not yet satisfied
  std::vector<DischargedRequirement> discharged;

  friend bool operator==(const RoadmapStep&, const RoadmapStep&) = default;
};

struct Roadmap {
  std::vector<RoadmapStep> steps;

  friend bool operator==(const Roadmap&, const Roadmap&) = default;
};

/// Desired rank per area id. Areas not named are left where they are.
using Targets = std::map<std::string, int>;

/// Parses "area=rank,area=rank" or "all=<rank>" against `scheme`.
/// Throws `Error(VALIDATION)` for malformed text, `UNKNOWN_AREA_LEVEL` for
/// coordinates the scheme does not have.
Targets parse_targets(const Scheme& scheme, std::string_view text);

AssessmentSession start_session(const Scheme& scheme, SubjectInfo subject,
                                const SessionEnvironment& env = system_environment());

/// Last write wins. Re-recording an identical value and note returns the
/// session unchanged, so replays are idempotent.
AssessmentSession record_answer(const Scheme& scheme, AssessmentSession session,
                                std::string_view indicator_id, AnswerValue value,
                                std::string note,
                                const SessionEnvironment& env = system_environment());

int raw_level(const Scheme& scheme, const AssessmentSession& session,
              std::string_view area_id);

Profile compute_profile(const Scheme& scheme, const AssessmentSession& session);

std::vector<ConsistencyViolation> check_consistency(const Scheme& scheme,
                                                    const AssessmentSession& session);
/// Same rule evaluated on the raw levels recorded in a profile.
std::vector<ConsistencyViolation> check_consistency(const Scheme& scheme,
                                                    const Profile& profile);

GapReport gap_analysis(const Scheme& scheme, const AssessmentSession& session,
                       const Targets& targets);

/// Requires a consistent profile (raw == effective everywhere).
Roadmap build_roadmap(const Scheme& scheme, const Profile& current, const Targets& targets);

}  // namespace crstip

#endif  // CRSTIP_ENGINE_HPP

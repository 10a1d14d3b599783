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
/// JSON documents for engine values. Every writer emits keys in a fixed
/// order; `canonical_dump` adds 2-space indentation and a trailing LF, the
/// same rules scheme files follow. The CLI `--json` mode, the HTTP API and
/// the store all go through these functions, so their bytes agree.

#ifndef CRSTIP_CODEC_HPP
#define CRSTIP_CODEC_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "crstip/compare.hpp"
#include "crstip/engine.hpp"

namespace crstip {

using Json = nlohmann::ordered_json;

std::string canonical_dump(const Json& document);

Json to_json(const AreaLevel& coordinate);
Json to_json(const SubjectInfo& subject);
Json to_json(const AssessmentSession& session);
Json to_json(const Profile& profile);
Json to_json(const std::vector<ConsistencyViolation>& violations);
Json to_json(const GapReport& report);
Json to_json(const Roadmap& roadmap);
Json to_json(const ProfileDiff& diff);

/// {"profile": ..., "violations": [...]}
Json profile_report_json(const Profile& profile,
                         const std::vector<ConsistencyViolation>& violations);

/// Short form used by the API after answer updates.
Json session_summary_json(const AssessmentSession& session);

// Readers throw `Error(VALIDATION)` naming the offending field.
AreaLevel area_level_from_json(const Json& document);
SubjectInfo subject_from_json(const Json& document);
AssessmentSession session_from_json(const Json& document);
Profile profile_from_json(const Json& document);

}  // namespace crstip

#endif  // CRSTIP_CODEC_HPP

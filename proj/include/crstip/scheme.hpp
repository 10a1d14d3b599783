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
/// Domain model of a maturity assessment scheme.
///
/// A scheme is a list of key areas, each with an ordered scale of levels.
/// Levels above rank 1 carry yes/no indicators; rank 1 is the default floor
/// state and is always attained. Attaining (area, k) implicitly requires
/// (area, k-1); cross-area requirements are stored as explicit
/// `PrerequisiteEdge`s. The combined relation must be acyclic.
///
/// All types are plain values. Nothing here performs I/O.

#ifndef CRSTIP_SCHEME_HPP
#define CRSTIP_SCHEME_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace crstip {

/// An (area id, rank) coordinate.
struct AreaLevel {
  std::string area;
  int rank = 1;

  friend auto operator<=>(const AreaLevel&, const AreaLevel&) = default;
  friend bool operator==(const AreaLevel&, const AreaLevel&) = default;
};

std::string to_string(const AreaLevel& coordinate);

struct Indicator {
  std::string id;
  std::string statement;
  AreaLevel level;

  friend bool operator==(const Indicator&, const Indicator&) = default;
};

struct Level {
  int rank = 1;
  std::string name;
  std::string description;
  std::vector<Indicator> indicators;

  friend bool operator==(const Level&, const Level&) = default;
};

struct KeyArea {
  std::string id;
  std::string name;
  std::string description;
  std::vector<Level> levels;

  /// Highest rank present, 0 for an area without levels.
  int max_rank() const;
  const Level* find_level(int rank) const;

  friend bool operator==(const KeyArea&, const KeyArea&) = default;
};

/// `subject` cannot be attained unless `requires_level` is attained.
struct PrerequisiteEdge {
  AreaLevel subject;
  AreaLevel requires_level;
  std::string rationale;

  friend bool operator==(const PrerequisiteEdge&, const PrerequisiteEdge&) = default;
};

struct Scheme {
  std::string id;
  std::string name;
  std::string version;
  std::vector<KeyArea> areas;
  std::vector<PrerequisiteEdge> prerequisites;

  const KeyArea* find_area(std::string_view area_id) const;
  std::optional<std::size_t> area_index(std::string_view area_id) const;
  const Level* find_level(const AreaLevel& coordinate) const;
  const Indicator* find_indicator(std::string_view indicator_id) const;
  bool contains(const AreaLevel& coordinate) const;

  friend bool operator==(const Scheme&, const Scheme&) = default;
};

struct ValidationIssue {
  std::string code;
  std::string path;  // e.g. "areas[3].levels"
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

namespace issue_codes {
inline constexpr const char* kEmptyAreaId = "EMPTY_AREA_ID";
inline constexpr const char* kDuplicateAreaId = "DUPLICATE_AREA_ID";
inline constexpr const char* kInvalidRank = "INVALID_RANK";
inline constexpr const char* kDuplicateRank = "DUPLICATE_RANK";
inline constexpr const char* kMissingRank = "MISSING_RANK";
inline constexpr const char* kNonContiguousRanks = "NON_CONTIGUOUS_RANKS";
inline constexpr const char* kRank1HasIndicators = "RANK1_HAS_INDICATORS";
inline constexpr const char* kEmptyIndicators = "EMPTY_INDICATORS";
inline constexpr const char* kEmptyIndicatorId = "EMPTY_INDICATOR_ID";
inline constexpr const char* kDuplicateIndicatorId = "DUPLICATE_INDICATOR_ID";
inline constexpr const char* kEmptyStatement = "EMPTY_STATEMENT";
inline constexpr const char* kIndicatorLevelMismatch = "INDICATOR_LEVEL_MISMATCH";
inline constexpr const char* kDanglingPrereq = "DANGLING_PREREQ";
inline constexpr const char* kSelfAreaPrereq = "SELF_AREA_PREREQ";
inline constexpr const char* kPrereqCycle = "PREREQ_CYCLE";
}  // namespace issue_codes

/// Checks every structural invariant of `scheme`. Issues come out in
/// document (path) order; an empty result means the scheme is valid.
std::vector<ValidationIssue> validate_scheme(const Scheme& scheme);

/// Throws `Error(INVALID_SCHEME)` listing the first issue when invalid.
void require_valid(const Scheme& scheme);

/// Requirements one step away from `coordinate`: the implicit (area, rank-1)
/// for rank >= 2 followed by the explicit edges, in edge order.
std::vector<AreaLevel> direct_prerequisites(const Scheme& scheme,
                                            const AreaLevel& coordinate);

/// Smallest superset of `targets` closed under implicit and explicit
/// prerequisites. Throws `Error(UNKNOWN_AREA_LEVEL)` for unknown targets.
std::set<AreaLevel> prerequisite_closure(const Scheme& scheme,
                                         const std::set<AreaLevel>& targets);

}  // namespace crstip

#endif  // CRSTIP_SCHEME_HPP

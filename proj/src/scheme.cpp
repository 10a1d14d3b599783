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

#include "crstip/scheme.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_set>

#include "crstip/error.hpp"

namespace crstip {

std::string to_string(const AreaLevel& coordinate) {
  return "(" + coordinate.area + "," + std::to_string(coordinate.rank) + ")";
}

int KeyArea::max_rank() const {
  int result = 0;
  for (const auto& level : levels) result = std::max(result, level.rank);
  return result;
}

const Level* KeyArea::find_level(int rank) const {
  for (const auto& level : levels) {
    if (level.rank == rank) return &level;
  }
  return nullptr;
}

const KeyArea* Scheme::find_area(std::string_view area_id) const {
  for (const auto& area : areas) {
    if (area.id == area_id) return &area;
  }
  return nullptr;
}

std::optional<std::size_t> Scheme::area_index(std::string_view area_id) const {
  for (std::size_t i = 0; i < areas.size(); ++i) {
    if (areas[i].id == area_id) return i;
  }
  return std::nullopt;
}

const Level* Scheme::find_level(const AreaLevel& coordinate) const {
  const KeyArea* area = find_area(coordinate.area);
  return area ? area->find_level(coordinate.rank) : nullptr;
}

const Indicator* Scheme::find_indicator(std::string_view indicator_id) const {
  for (const auto& area : areas) {
    for (const auto& level : area.levels) {
      for (const auto& indicator : level.indicators) {
        if (indicator.id == indicator_id) return &indicator;
      }
    }
  }
  return nullptr;
}

bool Scheme::contains(const AreaLevel& coordinate) const {
  return find_level(coordinate) != nullptr;
}

namespace {

std::string area_path(std::size_t i) {
  return "areas[" + std::to_string(i) + "]";
}

std::string level_path(std::size_t i, std::size_t j) {
  return area_path(i) + ".levels[" + std::to_string(j) + "]";
}

std::string edge_path(std::size_t e) {
  return "prerequisites[" + std::to_string(e) + "]";
}

void validate_levels(const KeyArea& area, std::size_t i,
                     std::unordered_set<std::string>& indicator_ids,
                     std::vector<ValidationIssue>& issues) {
  std::set<int> ranks;
  for (const auto& level : area.levels) {
    if (level.rank >= 1) ranks.insert(level.rank);
  }
  const std::string levels = area_path(i) + ".levels";
  if (!ranks.contains(1)) {
    issues.push_back({issue_codes::kMissingRank, levels,
                      "area '" + area.id + "' has no rank-1 level"});
  }
  if (!ranks.empty() &&
      static_cast<std::size_t>(*ranks.rbegin() - *ranks.begin() + 1) != ranks.size()) {
    std::string present;
    for (int r : ranks) present += (present.empty() ? "" : ",") + std::to_string(r);
    issues.push_back({issue_codes::kNonContiguousRanks, levels,
                      "area '" + area.id + "' has ranks {" + present +
                          "}; ranks must be contiguous from 1"});
  }

  std::set<int> seen;
  for (std::size_t j = 0; j < area.levels.size(); ++j) {
    const Level& level = area.levels[j];
    const std::string path = level_path(i, j);
    if (level.rank < 1) {
      issues.push_back({issue_codes::kInvalidRank, path + ".rank",
                        "rank must be >= 1, got " + std::to_string(level.rank)});
    } else if (!seen.insert(level.rank).second) {
      issues.push_back({issue_codes::kDuplicateRank, path + ".rank",
                        "rank " + std::to_string(level.rank) +
                            " appears more than once in area '" + area.id + "'"});
    }
    if (level.rank == 1 && !level.indicators.empty()) {
      issues.push_back({issue_codes::kRank1HasIndicators, path + ".indicators",
                        "rank-1 levels are default states and take no indicators"});
    }
    if (level.rank >= 2 && level.indicators.empty()) {
      issues.push_back({issue_codes::kEmptyIndicators, path + ".indicators",
                        "rank " + std::to_string(level.rank) + " of area '" + area.id +
                            "' needs at least one indicator"});
    }
    for (std::size_t k = 0; k < level.indicators.size(); ++k) {
      const Indicator& indicator = level.indicators[k];
      const std::string ipath = path + ".indicators[" + std::to_string(k) + "]";
      if (indicator.id.empty()) {
        issues.push_back({issue_codes::kEmptyIndicatorId, ipath + ".id",
                          "indicator id is empty"});
      } else if (!indicator_ids.insert(indicator.id).second) {
        issues.push_back({issue_codes::kDuplicateIndicatorId, ipath + ".id",
                          "indicator id '" + indicator.id + "' is not unique"});
      }
      if (indicator.statement.empty()) {
        issues.push_back({issue_codes::kEmptyStatement, ipath + ".statement",
                          "indicator '" + indicator.id + "' has an empty statement"});
      }
      if (indicator.level != AreaLevel{area.id, level.rank}) {
        issues.push_back({issue_codes::kIndicatorLevelMismatch, ipath,
                          "indicator '" + indicator.id + "' claims level " +
                              to_string(indicator.level) + " but is owned by " +
                              to_string(AreaLevel{area.id, level.rank})});
      }
    }
  }
}

// Maps each explicit edge index that lies on a prerequisite cycle to the
// cycle's issue. One issue per strongly connected component, attached to the
// lowest-indexed edge inside it.
std::map<std::size_t, ValidationIssue> find_cycles(const Scheme& scheme,
                                                   const std::vector<bool>& usable) {
  std::map<AreaLevel, std::size_t> index;
  std::vector<AreaLevel> nodes;
  for (const auto& area : scheme.areas) {
    for (const auto& level : area.levels) {
      AreaLevel node{area.id, level.rank};
      if (index.emplace(node, nodes.size()).second) nodes.push_back(node);
    }
  }
  const std::size_t n = nodes.size();
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t u = 0; u < n; ++u) {
    auto below = index.find(AreaLevel{nodes[u].area, nodes[u].rank - 1});
    if (below != index.end()) out[u].push_back(below->second);
  }
  for (std::size_t e = 0; e < scheme.prerequisites.size(); ++e) {
    if (!usable[e]) continue;
    const auto& edge = scheme.prerequisites[e];
    out[index.at(edge.subject)].push_back(index.at(edge.requires_level));
  }

  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : out[u]) {
        if (!reach[s][v]) {
          reach[s][v] = true;
          stack.push_back(v);
        }
      }
    }
  }

  std::map<std::size_t, ValidationIssue> result;
  std::set<std::size_t> reported;
  for (std::size_t e = 0; e < scheme.prerequisites.size(); ++e) {
    if (!usable[e]) continue;
    const auto& edge = scheme.prerequisites[e];
    std::size_t u = index.at(edge.subject);
    std::size_t v = index.at(edge.requires_level);
    if (!reach[v][u]) continue;
    std::size_t representative = u;
    std::string members;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == u || (reach[u][w] && reach[w][u])) {
        representative = std::min(representative, w);
        members += (members.empty() ? "" : " ") + to_string(nodes[w]);
      }
    }
    if (!reported.insert(representative).second) continue;
    result.emplace(e, ValidationIssue{issue_codes::kPrereqCycle, edge_path(e),
                                      "prerequisite cycle through " + members});
  }
  return result;
}

}  // namespace

std::vector<ValidationIssue> validate_scheme(const Scheme& scheme) {
  std::vector<ValidationIssue> issues;
  std::unordered_set<std::string> area_ids;
  std::unordered_set<std::string> indicator_ids;
  for (std::size_t i = 0; i < scheme.areas.size(); ++i) {
    const KeyArea& area = scheme.areas[i];
    if (area.id.empty()) {
      issues.push_back({issue_codes::kEmptyAreaId, area_path(i) + ".id", "area id is empty"});
    } else if (!area_ids.insert(area.id).second) {
      issues.push_back({issue_codes::kDuplicateAreaId, area_path(i) + ".id",
                        "area id '" + area.id + "' is not unique"});
    }
    validate_levels(area, i, indicator_ids, issues);
  }

  std::vector<bool> usable(scheme.prerequisites.size(), true);
  std::vector<std::vector<ValidationIssue>> edge_issues(scheme.prerequisites.size());
  for (std::size_t e = 0; e < scheme.prerequisites.size(); ++e) {
    const auto& edge = scheme.prerequisites[e];
    if (!scheme.contains(edge.subject)) {
      edge_issues[e].push_back({issue_codes::kDanglingPrereq, edge_path(e) + ".subject",
                                "unknown coordinate " + to_string(edge.subject)});
      usable[e] = false;
    }
    if (!scheme.contains(edge.requires_level)) {
      edge_issues[e].push_back({issue_codes::kDanglingPrereq, edge_path(e) + ".requires",
                                "unknown coordinate " + to_string(edge.requires_level)});
      usable[e] = false;
    }
    if (edge.subject.area == edge.requires_level.area) {
      edge_issues[e].push_back(
          {issue_codes::kSelfAreaPrereq, edge_path(e),
           "edge " + to_string(edge.subject) + " -> " + to_string(edge.requires_level) +
               " stays inside one area; within-area order is implicit"});
      usable[e] = false;
    }
  }
  auto cycles = find_cycles(scheme, usable);
  for (std::size_t e = 0; e < scheme.prerequisites.size(); ++e) {
    issues.insert(issues.end(), edge_issues[e].begin(), edge_issues[e].end());
    if (auto it = cycles.find(e); it != cycles.end()) issues.push_back(it->second);
  }
  return issues;
}

void require_valid(const Scheme& scheme) {
  auto issues = validate_scheme(scheme);
  if (!issues.empty()) {
    throw Error(codes::kInvalidScheme, "scheme '" + scheme.id + "' is invalid: " +
                                           issues.front().code + " at " +
                                           issues.front().path + " (" +
                                           std::to_string(issues.size()) + " issue(s))");
  }
}

std::vector<AreaLevel> direct_prerequisites(const Scheme& scheme,
                                            const AreaLevel& coordinate) {
  std::vector<AreaLevel> result;
  if (coordinate.rank >= 2) {
    AreaLevel below{coordinate.area, coordinate.rank - 1};
    if (scheme.contains(below)) result.push_back(std::move(below));
  }
  for (const auto& edge : scheme.prerequisites) {
    if (edge.subject == coordinate) result.push_back(edge.requires_level);
  }
  return result;
}

std::set<AreaLevel> prerequisite_closure(const Scheme& scheme,
                                         const std::set<AreaLevel>& targets) {
  for (const auto& target : targets) {
    if (!scheme.contains(target)) {
      throw Error(codes::kUnknownAreaLevel, "unknown coordinate " + to_string(target));
    }
  }
  std::set<AreaLevel> closure = targets;
  std::deque<AreaLevel> pending(targets.begin(), targets.end());
  while (!pending.empty()) {
    AreaLevel current = std::move(pending.front());
    pending.pop_front();
    for (auto& requirement : direct_prerequisites(scheme, current)) {
      if (closure.insert(requirement).second) pending.push_back(std::move(requirement));
    }
  }
  return closure;
}

}  // namespace crstip

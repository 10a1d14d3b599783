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

#include <random>

#include "crstip/error.hpp"
#include "crstip/scheme.hpp"
#include "crstip/scheme_parser.hpp"
#include "oracles.hpp"

namespace crstip {
namespace {

using testing::ReachabilityOracle;

bool has_issue(const std::vector<ValidationIssue>& issues, const std::string& code,
               const std::string& path = {}) {
  for (const auto& issue : issues) {
    if (issue.code == code && (path.empty() || issue.path == path)) return true;
  }
  return false;
}

Scheme two_area_scheme() {
  Scheme s;
  s.id = "two";
  s.name = "Two";
  s.version = "1";
  for (std::string id : {"A", "B"}) {
    KeyArea area{id, id, "", {}};
    for (int r = 1; r <= 3; ++r) {
      Level level{r, "L" + std::to_string(r), "", {}};
      if (r > 1) {
        level.indicators.push_back(
            {id + "." + std::to_string(r) + ".1", "statement", AreaLevel{id, r}});
      }
      area.levels.push_back(level);
    }
    s.areas.push_back(area);
  }
  return s;
}

TEST(SchemeValidation, CanonicalSchemeHasNoIssues) {
  EXPECT_TRUE(validate_scheme(builtin_scheme()).empty());
}

TEST(SchemeValidation, CanonicalShape) {
  const Scheme& s = builtin_scheme();
  ASSERT_EQ(s.areas.size(), 4u);
  for (const auto& area : s.areas) EXPECT_EQ(area.levels.size(), 4u) << area.id;
  EXPECT_EQ(s.areas[0].name, "Legal and compliance assessment");
  EXPECT_EQ(s.areas[0].levels[3].name, "Systematic and risk-driven");
  EXPECT_EQ(s.areas[2].levels[3].name, "Continuous risk based");
  EXPECT_EQ(s.areas[3].levels[2].name, "Partially integrated");
}

TEST(SchemeValidation, MissingRankIsNonContiguous) {
  Scheme s = builtin_scheme();
  auto& levels = s.areas[3].levels;
  levels.erase(levels.begin() + 2);
  s.prerequisites.clear();
  auto issues = validate_scheme(s);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, issue_codes::kNonContiguousRanks);
  EXPECT_EQ(issues[0].path, "areas[3].levels");
}

TEST(SchemeValidation, TwoEdgeCycle) {
  Scheme s = two_area_scheme();
  s.prerequisites.push_back({{"A", 3}, {"B", 2}, ""});
  s.prerequisites.push_back({{"B", 2}, {"A", 3}, ""});
  ASSERT_TRUE(ReachabilityOracle(s).has_cycle());
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kPrereqCycle));
  EXPECT_THROW(require_valid(s), Error);
}

TEST(SchemeValidation, CycleThroughImplicitEdges) {
  Scheme s = two_area_scheme();
  s.prerequisites.push_back({{"A", 2}, {"B", 3}, ""});
  s.prerequisites.push_back({{"B", 2}, {"A", 3}, ""});
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kPrereqCycle));
}

TEST(SchemeValidation, StructuralIssues) {
  Scheme s = two_area_scheme();
  s.areas[1].id = "A";
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kDuplicateAreaId, "areas[1].id"));

  s = two_area_scheme();
  s.areas[0].levels[0].indicators.push_back({"A.1.1", "x", {"A", 1}});
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kRank1HasIndicators));

  s = two_area_scheme();
  s.areas[0].levels[1].indicators.clear();
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kEmptyIndicators));

  s = two_area_scheme();
  s.areas[1].levels[1].indicators[0].id = "A.2.1";
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kDuplicateIndicatorId));

  s = two_area_scheme();
  s.areas[1].levels[1].indicators[0].statement = "";
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kEmptyStatement));

  s = two_area_scheme();
  s.prerequisites.push_back({{"A", 3}, {"C", 2}, ""});
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kDanglingPrereq));

  s = two_area_scheme();
  s.prerequisites.push_back({{"A", 3}, {"A", 2}, ""});
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kSelfAreaPrereq));

  s = two_area_scheme();
  s.areas[0].levels[2].rank = 0;
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kInvalidRank));

  s = two_area_scheme();
  s.areas[0].levels[2].rank = 2;
  EXPECT_TRUE(has_issue(validate_scheme(s), issue_codes::kDuplicateRank));
}

TEST(SchemeValidation, RandomCyclesAgreeWithOracle) {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    Scheme s = testing::random_scheme(rng);
    if (s.areas.size() < 2) continue;
    const KeyArea& a = s.areas[0];
    const KeyArea& b = s.areas[1];
    s.prerequisites.push_back(
        {{a.id, 1 + static_cast<int>(rng() % a.levels.size())},
         {b.id, 1 + static_cast<int>(rng() % b.levels.size())}, ""});
    s.prerequisites.push_back(
        {{b.id, 1 + static_cast<int>(rng() % b.levels.size())},
         {a.id, 1 + static_cast<int>(rng() % a.levels.size())}, ""});
    EXPECT_EQ(has_issue(validate_scheme(s), issue_codes::kPrereqCycle),
              ReachabilityOracle(s).has_cycle())
        << "case " << i;
  }
}

TEST(PrerequisiteClosure, SecurityTestingThree) {
  std::set<AreaLevel> expected = {{"security_testing", 1}, {"security_testing", 2},
                                  {"security_testing", 3}, {"risk_assessment", 1},
                                  {"risk_assessment", 2}};
  EXPECT_EQ(prerequisite_closure(builtin_scheme(), {{"security_testing", 3}}), expected);
  EXPECT_EQ(ReachabilityOracle(builtin_scheme()).closure({{"security_testing", 3}}), expected);
}

TEST(PrerequisiteClosure, RankOneIsItsOwnClosure) {
  Scheme s = two_area_scheme();
  EXPECT_EQ(prerequisite_closure(s, {{"A", 1}}), (std::set<AreaLevel>{{"A", 1}}));
}

TEST(PrerequisiteClosure, RiskFourPullsInTooling) {
  auto closure = prerequisite_closure(builtin_scheme(), {{"risk_assessment", 4}});
  EXPECT_TRUE(closure.count({"tooling", 3}));
  EXPECT_TRUE(closure.count({"tooling", 2}));
  EXPECT_TRUE(closure.count({"tooling", 1}));
}

TEST(PrerequisiteClosure, UnknownTargetThrows) {
  try {
    prerequisite_closure(builtin_scheme(), {{"tooling", 5}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), codes::kUnknownAreaLevel);
  }
}

TEST(PrerequisiteClosure, MatchesOracleOnRandomSchemes) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    Scheme s = testing::random_scheme(rng);
    ASSERT_TRUE(validate_scheme(s).empty());
    ReachabilityOracle oracle(s);
    for (const auto& node : oracle.nodes()) {
      auto closure = prerequisite_closure(s, {node});
      ASSERT_EQ(closure, oracle.closure({node})) << "case " << i << " " << to_string(node);
      // closed, contains the target, and every member is reachable
      for (const auto& member : closure) {
        for (const auto& next : direct_prerequisites(s, member)) {
          EXPECT_TRUE(closure.count(next));
        }
      }
    }
  }
}

TEST(DirectPrerequisites, ImplicitThenExplicit) {
  auto direct = direct_prerequisites(builtin_scheme(), {"security_testing", 4});
  ASSERT_EQ(direct.size(), 2u);
  EXPECT_EQ(direct[0], (AreaLevel{"security_testing", 3}));
  EXPECT_EQ(direct[1], (AreaLevel{"tooling", 3}));
}

}  // namespace
}  // namespace crstip

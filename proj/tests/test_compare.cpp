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

#include "crstip/codec.hpp"
#include "crstip/compare.hpp"
#include "crstip/error.hpp"
#include "crstip/scheme_parser.hpp"
#include "oracles.hpp"

namespace crstip {
namespace {

Profile load(const std::string& name) {
  return profile_from_json(Json::parse(testing::slurp(testing::fixture(name))));
}

std::vector<int> deltas(const ProfileDiff& diff) {
  std::vector<int> out;
  for (const auto& a : diff.areas) out.push_back(a.delta);
  return out;
}

TEST(CompareProfiles, MedipediaBeforeAfter) {
  ProfileDiff diff =
      compare_profiles(load("medipedia-before.profile.json"), load("medipedia-after.profile.json"));
  EXPECT_EQ(deltas(diff), (std::vector<int>{2, 1, 2, 1}));
  EXPECT_EQ(diff.improved, 4);
  EXPECT_EQ(diff.regressed, 0);
  EXPECT_EQ(diff.unchanged, 0);
  EXPECT_EQ(diff.newly_satisfied, 17);
  EXPECT_EQ(diff.areas[0].newly_satisfied.size(), 7u);
}

TEST(CompareProfiles, SelfIsZero) {
  Profile p = load("medipedia-before.profile.json");
  ProfileDiff diff = compare_profiles(p, p);
  EXPECT_EQ(deltas(diff), (std::vector<int>{0, 0, 0, 0}));
  EXPECT_EQ(diff.unchanged, 4);
  EXPECT_EQ(diff.newly_satisfied, 0);
}

TEST(CompareProfiles, VersionMismatch) {
  Profile a = load("medipedia-before.profile.json");
  Profile b = a;
  b.scheme_version = "2.0.0";
  try {
    compare_profiles(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), codes::kSchemeMismatch);
  }
  b = a;
  b.areas.pop_back();
  EXPECT_THROW(compare_profiles(a, b), Error);
}

TEST(CompareProfiles, Antisymmetric) {
  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<int> x, y;
    for (int k = 0; k < 4; ++k) {
      x.push_back(1 + static_cast<int>(rng() % 4));
      y.push_back(1 + static_cast<int>(rng() % 4));
    }
    Profile a = compute_profile(builtin_scheme(), testing::session_at(builtin_scheme(), x));
    Profile b = compute_profile(builtin_scheme(), testing::session_at(builtin_scheme(), y));
    ProfileDiff ab = compare_profiles(a, b);
    ProfileDiff ba = compare_profiles(b, a);
    for (std::size_t k = 0; k < 4; ++k) {
      EXPECT_EQ(ab.areas[k].delta, -ba.areas[k].delta);
      EXPECT_EQ(ab.areas[k].delta, b.areas[k].effective_level - a.areas[k].effective_level);
    }
    EXPECT_EQ(ab.improved, ba.regressed);
    EXPECT_EQ(ab.improved + ab.regressed + ab.unchanged, 4);
  }
}

}  // namespace
}  // namespace crstip

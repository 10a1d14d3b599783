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

#ifndef CRSTIP_COMPARE_HPP
#define CRSTIP_COMPARE_HPP

#include <string>
#include <vector>

#include "crstip/engine.hpp"

namespace crstip {

struct AreaDiff {
  std::string area;
  int before = 1;  // effective levels
  int after = 1;
  int delta = 0;
  std::vector<std::string> newly_satisfied;

  friend bool operator==(const AreaDiff&, const AreaDiff&) = default;
};

struct ProfileDiff {
  std::string scheme_id;
  std::string scheme_version;
  std::vector<AreaDiff> areas;  // order of `before`
  int improved = 0;
  int regressed = 0;
  int unchanged = 0;
  int newly_satisfied = 0;

  friend bool operator==(const ProfileDiff&, const ProfileDiff&) = default;
};

/// Before/after comparison of two profiles of the same scheme version.
/// Throws `Error(SCHEME_MISMATCH)` when the schemes or area sets differ.
ProfileDiff compare_profiles(const Profile& before, const Profile& after);

}  // namespace crstip

#endif  // CRSTIP_COMPARE_HPP

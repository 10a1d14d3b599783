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

#include "crstip/compare.hpp"

#include <algorithm>

#include "crstip/error.hpp"

namespace crstip {

ProfileDiff compare_profiles(const Profile& before, const Profile& after) {
  if (before.scheme_id != after.scheme_id || before.scheme_version != after.scheme_version) {
    throw Error(codes::kSchemeMismatch,
                "cannot compare " + before.scheme_id + "@" + before.scheme_version + " with " +
                    after.scheme_id + "@" + after.scheme_version);
  }
  if (before.areas.size() != after.areas.size()) {
    throw Error(codes::kSchemeMismatch, "profiles cover different area sets");
  }
  ProfileDiff diff;
  diff.scheme_id = before.scheme_id;
  diff.scheme_version = before.scheme_version;
  for (const auto& old_area : before.areas) {
    const AreaProfile* new_area = after.find(old_area.area);
    if (!new_area) {
      throw Error(codes::kSchemeMismatch, "area '" + old_area.area + "' is missing after");
    }
    AreaDiff area;
    area.area = old_area.area;
    area.before = old_area.effective_level;
    area.after = new_area->effective_level;
    area.delta = area.after - area.before;
    for (const auto& id : new_area->satisfied) {
      if (std::find(old_area.satisfied.begin(), old_area.satisfied.end(), id) ==
          old_area.satisfied.end()) {
        area.newly_satisfied.push_back(id);
      }
    }
    if (area.delta > 0) {
      ++diff.improved;
    } else if (area.delta < 0) {
      ++diff.regressed;
    } else {
      ++diff.unchanged;
    }
    diff.newly_satisfied += static_cast<int>(area.newly_satisfied.size());
    diff.areas.push_back(std::move(area));
  }
  return diff;
}

}  // namespace crstip

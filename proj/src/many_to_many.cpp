// Copyright 2026 The CSM Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "csm/many_to_many.hpp"

#include <algorithm>
#include <unordered_map>

namespace csm {

namespace {

Id clone_id(const Id& id, int k) { return id + "#" + std::to_string(k + 1); }

}  // namespace

std::pair<Instance, CloneMap> clone_m2m(const ManyToManyInstance& m2m) {
  std::vector<std::string> violations;
  std::unordered_map<Id, int> quota;
  for (const auto& a : m2m.applicants) {
    if (a.quota < 1)
      violations.push_back("applicant '" + a.id + "': quota " + std::to_string(a.quota) + " < 1");
    quota[a.id] = std::max(a.quota, 1);
  }
  if (!violations.empty()) throw ValidationError(violations);

  RawInstance raw;
  for (const auto& inst : m2m.institutes) {
    RawInstitute ri;
    ri.id = inst.id;
    ri.capacity = inst.quota;
    for (const auto& aid : inst.preferences) {
      auto q = quota.find(aid);
      if (q == quota.end()) {
        // Keep the dangling id so validation reports it.
        ri.preferences.push_back(aid);
        continue;
      }
      RawClass cls;
      for (int k = 0; k < q->second; ++k) {
        ri.preferences.push_back(clone_id(aid, k));
        cls.members.push_back(clone_id(aid, k));
      }
      ri.classes.push_back(std::move(cls));
    }
    raw.institutes.push_back(std::move(ri));
  }
  for (const auto& a : m2m.applicants)
    for (int k = 0; k < quota[a.id]; ++k) raw.applicants.push_back({clone_id(a.id, k), a.preferences});

  Instance instance = validate(raw);
  CloneMap map;
  int next = 0;
  for (const auto& a : m2m.applicants) {
    std::vector<int> mine;
    for (int k = 0; k < quota[a.id]; ++k) {
      mine.push_back(next++);
      map.original.push_back(static_cast<int>(map.clones.size()));
    }
    map.clones.push_back(std::move(mine));
  }
  return {std::move(instance), std::move(map)};
}

std::vector<std::vector<int>> map_back(const Matching& matching, const CloneMap& clones) {
  std::vector<std::vector<int>> out(clones.clones.size());
  for (int c = 0; c < static_cast<int>(matching.size()); ++c)
    if (matching[c] >= 0) out[clones.original[c]].push_back(matching[c]);
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

}  // namespace csm

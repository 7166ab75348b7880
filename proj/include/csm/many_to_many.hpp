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

#ifndef CSM_MANY_TO_MANY_HPP_
#define CSM_MANY_TO_MANY_HPP_

#include <utility>
#include <vector>

#include "csm/instance.hpp"
#include "csm/matching.hpp"

namespace csm {

struct M2MEntity {
  Id id;
  int quota = 1;
  std::vector<Id> preferences;
};

struct ManyToManyInstance {
  std::vector<M2MEntity> institutes;
  std::vector<M2MEntity> applicants;
};

struct CloneMap {
  std::vector<std::vector<int>> clones;  // original applicant -> clone indices, in clone order
  std::vector<int> original;             // clone -> original applicant
};

// Institute lists hold the clones of an applicant consecutively at its
// position; each applicant's clones form a class with upper bound 1.
// Throws ValidationError on malformed input.
std::pair<Instance, CloneMap> clone_m2m(const ManyToManyInstance& m2m);

// For each original applicant, the institutes holding one of its clones,
// ascending.
std::vector<std::vector<int>> map_back(const Matching& matching, const CloneMap& clones);

}  // namespace csm

#endif  // CSM_MANY_TO_MANY_HPP_

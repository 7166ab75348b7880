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

#include "csm/matching.hpp"

#include <algorithm>

namespace csm {

std::vector<std::vector<int>> by_institute(const Instance& instance, const Matching& matching) {
  std::vector<std::vector<int>> out(instance.num_institutes());
  for (int a = 0; a < static_cast<int>(matching.size()); ++a)
    if (matching[a] >= 0) out[matching[a]].push_back(a);
  for (int i = 0; i < instance.num_institutes(); ++i)
    std::sort(out[i].begin(), out[i].end(), [&](int x, int y) {
      return instance.institute_rank(i, x) < instance.institute_rank(i, y);
    });
  return out;
}

int matching_size(const Matching& matching) {
  return static_cast<int>(std::count_if(matching.begin(), matching.end(),
                                        [](int i) { return i >= 0; }));
}

std::string format_matching(const Instance& instance, const Matching& matching) {
  auto groups = by_institute(instance, matching);
  std::string out;
  for (int i = 0; i < instance.num_institutes(); ++i) {
    if (i > 0) out += ", ";
    out += "(" + instance.institute(i).id + ";";
    for (size_t k = 0; k < groups[i].size(); ++k)
      out += (k == 0 ? " " : ", ") + instance.applicant(groups[i][k]).id;
    out += ")";
  }
  return out;
}

}  // namespace csm

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

#ifndef CSM_MATCHING_HPP_
#define CSM_MATCHING_HPP_

#include <string>
#include <vector>

#include "csm/instance.hpp"

namespace csm {

// Applicant index -> institute index, -1 when unmatched.
using Matching = std::vector<int>;

inline Matching empty_matching(const Instance& instance) {
  return Matching(instance.num_applicants(), -1);
}

// mu(i) for every institute, each sorted by the institute's preference.
std::vector<std::vector<int>> by_institute(const Instance& instance, const Matching& matching);

int matching_size(const Matching& matching);

// "(i1; a6, a2), (i2; a7)" with institutes in input order.
std::string format_matching(const Instance& instance, const Matching& matching);

}  // namespace csm

#endif  // CSM_MATCHING_HPP_

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

#ifndef CSM_ORDER_TYPE_HPP_
#define CSM_ORDER_TYPE_HPP_

#include <vector>

#include "csm/instance.hpp"

namespace csm {

// Distinct non-empty intersections of an institute's classes (a class meets
// itself), ordered by strict containment.
struct InclusionPoset {
  // Member sets as sorted applicant indices.
  std::vector<std::vector<int>> elements;
  // below[e] lists the elements strictly contained in e.
  std::vector<std::vector<int>> below;

  int size() const { return static_cast<int>(elements.size()); }
  bool less(int x, int y) const;  // elements[x] strictly inside elements[y]
};

InclusionPoset inclusion_poset(const Institute& institute);

struct OrderType {
  bool downward_forest = true;
  // Set when some element has two incomparable strict supersets.
  int bottom = -1;
  int left = -1;
  int right = -1;
};

OrderType classify_order_type(const InclusionPoset& poset);

// Indices of the sets not contained in another member of the family. Among
// equal sets only the first is kept.
std::vector<int> absorb(const std::vector<std::vector<int>>& sets);

}  // namespace csm

#endif  // CSM_ORDER_TYPE_HPP_

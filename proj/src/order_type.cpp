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

#include "csm/order_type.hpp"

#include <algorithm>
#include <set>

namespace csm {

namespace {

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool InclusionPoset::less(int x, int y) const {
  return elements[x].size() < elements[y].size() && subset(elements[x], elements[y]);
}

InclusionPoset inclusion_poset(const Institute& institute) {
  std::vector<std::vector<int>> classes;
  for (const auto& c : institute.classes) {
    std::vector<int> m = c.members;
    std::sort(m.begin(), m.end());
    classes.push_back(std::move(m));
  }
  std::set<std::vector<int>> seen;
  InclusionPoset poset;
  for (size_t j = 0; j < classes.size(); ++j) {
    for (size_t k = j; k < classes.size(); ++k) {
      std::vector<int> meet;
      std::set_intersection(classes[j].begin(), classes[j].end(), classes[k].begin(),
                            classes[k].end(), std::back_inserter(meet));
      if (meet.empty() || !seen.insert(meet).second) continue;
      poset.elements.push_back(std::move(meet));
    }
  }
  poset.below.assign(poset.elements.size(), {});
  for (int x = 0; x < poset.size(); ++x)
    for (int y = 0; y < poset.size(); ++y)
      if (poset.less(y, x)) poset.below[x].push_back(y);
  return poset;
}

OrderType classify_order_type(const InclusionPoset& poset) {
  OrderType out;
  for (int e = 0; e < poset.size(); ++e) {
    std::vector<int> above;
    for (int y = 0; y < poset.size(); ++y)
      if (poset.less(e, y)) above.push_back(y);
    for (size_t p = 0; p < above.size(); ++p) {
      for (size_t q = p + 1; q < above.size(); ++q) {
        int l = above[p], r = above[q];
        if (!poset.less(l, r) && !poset.less(r, l)) {
          out.downward_forest = false;
          out.bottom = e;
          out.left = l;
          out.right = r;
          return out;
        }
      }
    }
  }
  return out;
}

std::vector<int> absorb(const std::vector<std::vector<int>>& sets) {
  std::vector<std::vector<int>> sorted;
  for (const auto& s : sets) {
    std::vector<int> m = s;
    std::sort(m.begin(), m.end());
    sorted.push_back(std::move(m));
  }
  std::vector<int> kept;
  for (size_t x = 0; x < sorted.size(); ++x) {
    bool dropped = false;
    for (size_t y = 0; y < sorted.size() && !dropped; ++y) {
      if (x == y || !subset(sorted[x], sorted[y])) continue;
      if (sorted[x].size() < sorted[y].size() || y < x) dropped = true;
    }
    if (!dropped) kept.push_back(static_cast<int>(x));
  }
  return kept;
}

}  // namespace csm

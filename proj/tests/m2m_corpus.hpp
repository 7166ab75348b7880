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

#ifndef CSM_TESTS_M2M_CORPUS_HPP_
#define CSM_TESTS_M2M_CORPUS_HPP_

#include <random>

#include "csm/many_to_many.hpp"

namespace oracle {

inline csm::ManyToManyInstance random_m2m(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  csm::ManyToManyInstance m2m;
  const int ni = pick(1, 3), na = pick(1, 3);
  for (int i = 0; i < ni; ++i) m2m.institutes.push_back({"i" + std::to_string(i + 1), pick(1, 2), {}});
  for (int a = 0; a < na; ++a) m2m.applicants.push_back({"a" + std::to_string(a + 1), pick(1, 2), {}});
  for (auto& in : m2m.institutes)
    for (auto& ap : m2m.applicants)
      if (pick(0, 3) > 0) {
        in.preferences.push_back(ap.id);
        ap.preferences.push_back(in.id);
      }
  for (auto& e : m2m.institutes) std::shuffle(e.preferences.begin(), e.preferences.end(), rng);
  for (auto& e : m2m.applicants) std::shuffle(e.preferences.begin(), e.preferences.end(), rng);
  return m2m;
}

}  // namespace oracle

#endif  // CSM_TESTS_M2M_CORPUS_HPP_

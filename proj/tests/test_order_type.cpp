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

#include <doctest.h>

#include "csm/order_type.hpp"
#include "oracles.hpp"

using namespace csm;

TEST_CASE("fig3 institutes have a V") {
  Instance inst = validate(parse_instance(read_file(oracle::fixture("fig3.json"))));
  for (int i = 0; i < 2; ++i) {
    InclusionPoset p = inclusion_poset(inst.institute(i));
    OrderType t = classify_order_type(p);
    CHECK_FALSE(t.downward_forest);
    REQUIRE(t.bottom >= 0);
    CHECK(p.less(t.bottom, t.left));
    CHECK(p.less(t.bottom, t.right));
    CHECK_FALSE(p.less(t.left, t.right));
    CHECK_FALSE(p.less(t.right, t.left));
  }
}

TEST_CASE("laminar classifications are downward forests") {
  for (const char* name : {"fig2.json", "fig4.json"}) {
    Instance inst = oracle::load_fixture(name);
    for (const auto& in : inst.institutes()) CHECK(classify_order_type(inclusion_poset(in)).downward_forest);
  }
  for (std::uint64_t seed = 1; seed < 100; ++seed) {
    Instance inst = validate(oracle::corpus_instance(seed, 4, 8, 0.0));
    for (const auto& in : inst.institutes()) CHECK(classify_order_type(inclusion_poset(in)).downward_forest);
  }
}

TEST_CASE("poset elements are the distinct intersections") {
  Instance inst = validate(parse_instance(read_file(oracle::fixture("fig3.json"))));
  InclusionPoset p = inclusion_poset(inst.institute(1));
  // three pairs sharing a2 plus their common intersection {a2}
  CHECK(p.size() == 4);
}

TEST_CASE("absorb keeps maximal sets") {
  std::vector<std::vector<int>> sets = {{1, 2}, {1}, {3}, {1, 2}, {2, 3}};
  CHECK(absorb(sets) == std::vector<int>{0, 4});
}

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

#include "csm/class_forest.hpp"
#include "csm/instance.hpp"
#include "oracles.hpp"

using namespace csm;

namespace {

RawInstance tiny() {
  RawInstance raw;
  raw.institutes.push_back({"i1", 2, {"a1", "a2", "a3"}, {{{"a1", "a2"}, 1, 0}}});
  raw.applicants.push_back({"a1", {"i1"}});
  raw.applicants.push_back({"a2", {"i1"}});
  raw.applicants.push_back({"a3", {"i1"}});
  return raw;
}

bool mentions(const ValidationError& e, const std::string& text) {
  for (const auto& v : e.violations())
    if (v.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate accepts a well formed instance") {
  Instance inst = validate(tiny());
  CHECK(inst.num_institutes() == 1);
  CHECK(inst.num_applicants() == 3);
  CHECK(inst.num_pairs() == 3);
  CHECK(inst.institute_rank(0, 2) == 2);
  CHECK(inst.applicant_rank(1, 0) == 0);
  CHECK(inst.institute_prefers(0, 0, 1));
  CHECK(inst.applicant_prefers(0, 0, -1));
  CHECK_FALSE(inst.has_lower_bounds());
  CHECK(inst.total_list_length() == 6);
}

TEST_CASE("validate collects every violation") {
  RawInstance raw = tiny();
  raw.institutes[0].capacity = 0;
  raw.institutes[0].classes.push_back({{"a9"}, 1, 0});
  raw.institutes[0].classes.push_back({{"a1"}, 1, 2});
  raw.institutes[0].classes.push_back({{}, 1, 0});
  raw.applicants[2].preferences.clear();
  raw.applicants.push_back({"a1", {}});
  try {
    validate(raw);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(mentions(e, "capacity 0"));
    CHECK(mentions(e, "a9"));
    CHECK(mentions(e, "lower bound 2"));
    CHECK(mentions(e, "empty class"));
    CHECK(mentions(e, "non-mutual"));
    CHECK(mentions(e, "duplicate applicant id"));
    CHECK(e.violations().size() >= 6);
  }
}

TEST_CASE("to_raw inverts validate") {
  RawInstance raw = tiny();
  Instance inst = validate(raw);
  CHECK(serialize_instance(to_raw(inst)) == serialize_instance(raw));
}

TEST_CASE("forest of the fig2 institutes") {
  Instance inst = oracle::load_fixture("fig2.json");
  auto forests = preprocess(inst);
  const ClassForest& f = forests[0];
  // root, the declared class, five leaves
  CHECK(f.size() == 7);
  CHECK(f.node(0).kind == NodeKind::kRoot);
  CHECK(f.node(0).upper == 2);
  int cls = -1;
  for (int v = 0; v < f.size(); ++v)
    if (f.node(v).kind == NodeKind::kDeclared) cls = v;
  REQUIRE(cls > 0);
  CHECK(f.member_ranks(cls) == std::vector<int>{3, 4});
  CHECK(f.node(cls).upper == 1);
  CHECK(f.node(f.leaf_at(3)).parent == cls);
  CHECK(f.node(f.leaf_at(0)).parent == 0);
  CHECK(f.is_ancestor(0, f.leaf_at(4)));
  CHECK(f.contains_rank(cls, 4));
  CHECK_FALSE(f.contains_rank(cls, 1));
  CHECK(f.path_at(4) == std::vector<int>{f.leaf_at(4), cls, 0});
  CHECK(forest_rank(f) == 2);
  const auto& order = f.bottom_up();
  CHECK(order.back() == 0);
}

TEST_CASE("fig3 classes are not laminar") {
  RawInstance raw = parse_instance(read_file(oracle::fixture("fig3.json")));
  Instance inst = validate(raw);
  try {
    preprocess(inst);
    FAIL("expected NotLaminar");
  } catch (const NotLaminar& e) {
    CHECK(e.institute() == 0);
    CHECK(e.first_class() == 0);
    CHECK(e.second_class() == 1);
  }
}

TEST_CASE("duplicate classes merge and lower bounds lift") {
  RawInstance raw;
  raw.institutes.push_back({"i1", 3, {"a1", "a2", "a3", "a4"},
                            {{{"a1", "a2", "a3"}, 3, 0},
                             {{"a1", "a2"}, 2, 1},
                             {{"a2", "a1"}, 1, 0},
                             {{"a3"}, 1, 1}}});
  for (const char* a : {"a1", "a2", "a3", "a4"}) raw.applicants.push_back({a, {"i1"}});
  Instance inst = validate(raw);
  ClassForest f = preprocess_institute(inst, 0);
  // root, {a1,a2,a3}, {a1,a2}, {a3}, four leaves
  CHECK(f.size() == 8);
  int pair = -1, triple = -1;
  for (int v = 0; v < f.size(); ++v) {
    if (f.node(v).members.size() == 2) pair = v;
    if (f.node(v).members.size() == 3) triple = v;
  }
  REQUIRE(pair > 0);
  REQUIRE(triple > 0);
  CHECK(f.node(pair).upper == 1);
  CHECK(f.node(pair).lower == 1);
  CHECK(f.node(pair).declared.size() == 2);
  CHECK(f.node(pair).parent == triple);
  CHECK(f.node(triple).lower == 2);
  CHECK(f.node(0).lower == 2);
}

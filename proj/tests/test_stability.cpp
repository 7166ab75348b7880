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

#include <random>

#include "csm/stability.hpp"
#include "oracles.hpp"

using namespace csm;

TEST_CASE("enumeration agrees with the oracle, lower bounds included") {
  for (std::uint64_t seed = 2000; seed < 2150; ++seed) {
    Instance inst = validate(oracle::corpus_instance(seed, 4, 6, 0.35));
    CAPTURE(seed);
    CHECK(enumerate_stable(inst) == oracle::stable_matchings(inst));
  }
}

TEST_CASE("stability verdicts agree with the oracle on random matchings") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 3000; seed < 3100; ++seed) {
    Instance inst = validate(oracle::corpus_instance(seed, 4, 6, seed % 2 ? 0.3 : 0.0));
    for (int trial = 0; trial < 10; ++trial) {
      Matching m = empty_matching(inst);
      for (int a = 0; a < inst.num_applicants(); ++a) {
        const auto& list = inst.applicant(a).preferences;
        int pick = std::uniform_int_distribution<int>(-1, static_cast<int>(list.size()) - 1)(rng);
        m[a] = pick < 0 ? -1 : list[pick];
      }
      CAPTURE(seed);
      CAPTURE(trial);
      CHECK(check_feasibility(inst, m).has_value() != oracle::feasible_matching(inst, m));
      CHECK(is_stable(inst, m) == oracle::is_stable(inst, m));
      if (!oracle::feasible_matching(inst, m)) continue;
      bool group = false;
      for (int i = 0; i < inst.num_institutes(); ++i) group |= oracle::has_blocking_group(inst, m, i);
      auto bg = find_blocking_group(inst, m);
      CHECK(bg.has_value() == group);
      if (bg) {
        CHECK(oracle::feasible_tuple(inst, bg->institute, bg->members));
      }
      if (!inst.has_lower_bounds()) CHECK(find_blocking_pair(inst, m).has_value() == group);
    }
  }
}

TEST_CASE("feasibility reports the offending class") {
  Instance inst = oracle::load_fixture("fig2.json");
  Matching m = oracle::load_matching(inst, "fig2-mu.json");
  m[*inst.find_applicant("a3")] = 0;
  auto v = check_feasibility(inst, m);
  REQUIRE(v);
  CHECK(v->institute == 0);
  CHECK(v->count == 3);
}

TEST_CASE("blocking pair needs no lower bounds") {
  Instance inst = oracle::load_fixture("unreachable-lower.json");
  CHECK_THROWS_AS(find_blocking_pair(inst, empty_matching(inst)), std::invalid_argument);
}

TEST_CASE("fig3 stable matchings have sizes 2 and 4") {
  Instance inst = validate(parse_instance(read_file(oracle::fixture("fig3.json"))));
  auto all = enumerate_stable(inst);
  CHECK(all == oracle::stable_matchings(inst));
  std::set<int> sizes;
  for (const auto& m : all) sizes.insert(matching_size(m));
  CHECK(sizes.count(2));
  CHECK(sizes.count(4));
  RuralReport rep = rural_report(inst, all);
  CHECK_FALSE(rep.laminar);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("rural hospitals checks hold on fig4") {
  Instance inst = oracle::load_fixture("fig4.json");
  RuralReport rep = rural_report(inst, enumerate_stable(inst));
  CHECK(rep.laminar);
  CHECK(rep.checks.size() == 5);
  CHECK(rep.all_pass());
}

TEST_CASE("size cap") {
  Instance inst = oracle::load_fixture("fig4.json");
  CHECK_THROWS_AS(enumerate_stable(inst, 10), SizeCapExceeded);
}

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

#include "csm/io.hpp"
#include "csm/solver.hpp"
#include "oracles.hpp"

using namespace csm;

TEST_CASE("fig2 fixture contents") {
  Instance inst = oracle::load_fixture("fig2.json");
  REQUIRE(inst.num_institutes() == 5);
  REQUIRE(inst.num_applicants() == 7);
  auto ids = [&](const std::vector<int>& v, bool institutes) {
    std::string s;
    for (int x : v) s += (s.empty() ? "" : " ") + (institutes ? inst.institute(x).id : inst.applicant(x).id);
    return s;
  };
  CHECK(ids(inst.institute(0).preferences, false) == "a1 a6 a7 a2 a3");
  CHECK(ids(inst.institute(1).preferences, false) == "a4 a7");
  CHECK(ids(inst.institute(2).preferences, false) == "a2 a4");
  CHECK(ids(inst.institute(3).preferences, false) == "a5 a6");
  CHECK(ids(inst.institute(4).preferences, false) == "a3 a5 a7 a1");
  CHECK(inst.institute(0).capacity == 2);
  CHECK(inst.institute(4).capacity == 2);
  CHECK(ids(inst.institute(0).classes.at(0).members, false) == "a2 a3");
  CHECK(ids(inst.institute(4).classes.at(0).members, false) == "a3 a5");
  CHECK(ids(inst.applicant(6).preferences, true) == "i2 i1 i5");
  CHECK(ids(inst.applicant(0).preferences, true) == "i5 i1");
}

TEST_CASE("fig3 and fig4 fixture contents") {
  Instance f3 = validate(parse_instance(read_file(oracle::fixture("fig3.json"))));
  CHECK(f3.institute(1).classes.size() == 3);
  CHECK(f3.applicant(3).preferences.size() == 1);
  Instance f4 = oracle::load_fixture("fig4.json");
  CHECK(f4.institute(2).capacity == 4);
  CHECK(f4.institute(2).preferences.size() == 8);
  CHECK(f4.institute(1).preferences.front() == *f4.find_applicant("az"));
}

TEST_CASE("instance round trip is canonical") {
  std::string text = read_file(oracle::fixture("fig4.json"));
  CHECK(serialize_instance(parse_instance(text)) == text);
  std::string once = serialize_instance(parse_instance(read_file(oracle::fixture("fig2.json"))));
  CHECK(serialize_instance(parse_instance(once)) == once);
}

TEST_CASE("syntax errors carry the line") {
  try {
    parse_instance("{\n  \"institutes\": [\n    ,\n  ]\n}");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("schema errors carry the field path") {
  try {
    parse_instance(R"({"institutes": [{"id": "i1", "capacity": "two", "preferences": []}], "applicants": []})");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("institutes[0].capacity") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_instance(R"({"institutes": []})"), FormatError);
}

TEST_CASE("fractional points parse exactly") {
  Instance inst = oracle::load_fixture("fig2.json");
  FractionalMatching x = parse_point(read_file(oracle::fixture("fig2-x.json")), inst);
  CHECK(x[inst.pair_index(0, *inst.find_applicant("a3"))] == Rational(1, 5));
  Rational total = 0;
  for (const auto& v : x) total += v;
  CHECK(total == 7);
  FractionalMatching y = parse_point(
      R"([{"institute": "i1", "applicant": "a1", "value": "0.2"},
          {"institute": "i1", "applicant": "a6", "value": 1}])",
      inst);
  CHECK(y[inst.pair_index(0, 0)] == Rational(1, 5));
  CHECK(y[inst.pair_index(0, *inst.find_applicant("a6"))] == 1);
  CHECK_THROWS_AS(parse_point(R"([{"institute": "i1", "applicant": "a1", "value": 0.2}])", inst), FormatError);
  CHECK_THROWS_AS(parse_point(R"([{"institute": "i2", "applicant": "a1", "value": "1"}])", inst), FormatError);
  CHECK_THROWS_AS(parse_point(R"([{"institute": "i1", "applicant": "a1", "value": "1e-1"}])", inst),
                  FormatError);
  CHECK(parse_point(serialize_point(inst, x), inst) == x);
}

TEST_CASE("matching files") {
  Instance inst = oracle::load_fixture("fig2.json");
  Matching m = oracle::load_matching(inst, "fig2-mu.json");
  CHECK(m == *solve(inst).matching);
  CHECK(parse_matching(serialize_matching(inst, m), inst) == m);
  CHECK_THROWS_AS(parse_matching(R"({"a1": "i9"})", inst), FormatError);
  CHECK_THROWS_AS(parse_matching(R"({"zz": "i1"})", inst), FormatError);
}

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

#include "csm/separation.hpp"
#include "csm/stability.hpp"
#include "polytope_oracle.hpp"

using namespace csm;

namespace {

struct Fig2 {
  Instance inst = oracle::load_fixture("fig2.json");
  FractionalMatching x = parse_point(read_file(oracle::fixture("fig2-x.json")), inst);
  int a2 = *inst.find_applicant("a2");
};

}  // namespace

TEST_CASE("fig2 point violates only the class-tuple constraint") {
  Fig2 f;
  ConstraintReport rep = evaluate(f.inst, f.x);
  for (auto k : {ConstraintKind::kRow, ConstraintKind::kClass, ConstraintKind::kComb, ConstraintKind::kNonNegative})
    CHECK(rep.satisfies(k));
  REQUIRE(rep.violations.size() == 1);
  const Violation& v = rep.violations[0];
  CHECK(v.kind == ConstraintKind::kClassTuple);
  CHECK(v.institute == 0);
  CHECK(v.tuple == std::vector<int>{f.a2});
  CHECK(v.slack == Rational(1, 5));
  CHECK(rep.combs_checked > 0);

  auto sep = separate(f.inst, f.x);
  REQUIRE(sep);
  CHECK(sep->kind == ConstraintKind::kClassTuple);
  CHECK(sep->institute == 0);
  CHECK(sep->tuple == std::vector<int>{f.a2});
  CHECK(sep->slack == Rational(1, 5));

  CHECK(oracle::rows_classes_signs(f.inst, f.x));
  CHECK(oracle::combs_hold(f.inst, f.x));
  CHECK_FALSE(oracle::class_tuples_hold(f.inst, f.x));
}

TEST_CASE("tooth and shaft") {
  Fig2 f;
  const int a7 = *f.inst.find_applicant("a7");
  // a7 ranks i2 above i1
  CHECK(tooth(f.inst, 0, a7).size() == 2);
  CHECK(open_tooth_value(f.inst, f.x, 0, a7) == Rational(3, 10));
  CHECK(tooth_value(f.inst, f.x, 0, a7) == Rational(1, 2));
  auto forests = preprocess(f.inst);
  // with a2 in the tuple, a3 falls out of the shaft
  auto s = shaft(f.inst, forests[0], {f.a2});
  CHECK(std::find(s.begin(), s.end(), *f.inst.find_applicant("a3")) == s.end());
  CHECK(std::find(s.begin(), s.end(), f.a2) != s.end());
}

TEST_CASE("comb values agree with the oracle") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 4000; seed < 4060; ++seed) {
    Instance inst = validate(oracle::corpus_instance(seed, 3, 6, 0.0));
    auto forests = preprocess(inst);
    FractionalMatching x = oracle::combine(
        inst, {oracle::random_feasible(inst, rng), oracle::random_feasible(inst, rng)}, {1, 2});
    for (int i = 0; i < inst.num_institutes(); ++i) {
      oracle::for_each_subset(inst, i, [&](const std::vector<int>& t) {
        if (!oracle::upper_feasible(inst, i, t)) return;
        CHECK(comb_value(inst, forests[i], x, t) == oracle::comb(inst, x, i, t));
      });
    }
  }
}

TEST_CASE("indicator vectors of stable matchings are members") {
  for (const char* name : {"fig2.json", "fig4.json"}) {
    Instance inst = oracle::load_fixture(name);
    for (const auto& m : enumerate_stable(inst)) {
      FractionalMatching x = indicator(inst, m);
      CHECK(evaluate(inst, x).satisfied());
      CHECK_FALSE(separate(inst, x));
    }
  }
}

TEST_CASE("root tables equal the brute-force minimum comb") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 5000; seed < 5060; ++seed) {
    Instance inst = validate(oracle::corpus_instance(seed, 3, 6, 0.0));
    auto forests = preprocess(inst);
    FractionalMatching x = oracle::combine(
        inst, {oracle::random_feasible(inst, rng), oracle::random_feasible(inst, rng)}, {3, 2});
    for (int i = 0; i < inst.num_institutes(); ++i) {
      const int n = static_cast<int>(inst.institute(i).preferences.size());
      SeparationTable table(inst, forests[i], x, true);
      for (int s = 1; s <= std::min(n, inst.institute(i).capacity); ++s) {
        std::optional<Rational> best;
        oracle::for_each_subset(inst, i, [&](const std::vector<int>& t) {
          if (static_cast<int>(t.size()) != s || !oracle::upper_feasible(inst, i, t)) return;
          Rational v = oracle::comb(inst, x, i, t);
          if (!best || v < *best) best = v;
        });
        CAPTURE(seed);
        CAPTURE(i);
        CAPTURE(s);
        auto z = table.z(forests[i].root(), s, n);
        REQUIRE(z.has_value() == best.has_value());
        if (!z) continue;
        CHECK(*z == *best);
        auto t = table.z_tuple(forests[i].root(), s, n);
        CHECK(static_cast<int>(t.size()) == s);
        CHECK(oracle::comb(inst, x, i, t) == *z);
      }
    }
  }
}

TEST_CASE("class tables equal the brute-force minimum class-tuple side") {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 6000; seed < 6060; ++seed) {
    Instance inst = validate(oracle::corpus_instance(seed, 3, 6, 0.0));
    auto forests = preprocess(inst);
    FractionalMatching x = oracle::combine(
        inst, {oracle::random_feasible(inst, rng), oracle::random_feasible(inst, rng)}, {1, 1});
    for (int i = 0; i < inst.num_institutes(); ++i) {
      const ClassForest& f = forests[i];
      SeparationTable table(inst, f, x, false);
      for (int v = 0; v < f.size(); ++v) {
        if (f.node(v).kind != NodeKind::kDeclared) continue;
        const int q = f.node(v).upper;
        for (int p : f.member_ranks(v)) {
          std::optional<Rational> best;
          const int ap = inst.institute(i).preferences[p];
          oracle::for_each_subset(inst, i, [&](const std::vector<int>& t) {
            if (static_cast<int>(t.size()) != q || t.back() != ap) return;
            for (int a : t)
              if (!f.contains_rank(v, inst.institute_rank(i, a))) return;
            for (int u = 0; u < f.size(); ++u) {
              if (!f.is_ancestor(v, u)) continue;
              int n = 0;
              for (int a : t) n += f.contains_rank(u, inst.institute_rank(i, a));
              if (n > f.node(u).upper) return;
            }
            Rational s = 0;
            for (int a : t) s += oracle::open_tooth(inst, x, i, a);
            if (!best || s < *best) best = s;
          });
          CAPTURE(seed);
          auto y = table.y(v, q, p);
          REQUIRE(y.has_value() == best.has_value());
          if (y) CHECK(*y == *best);
        }
      }
    }
  }
}

TEST_CASE("separation agrees with exhaustive evaluation") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 7000; seed < 7100; ++seed) {
    Instance inst = validate(oracle::corpus_instance(seed, 3, 6, 0.0));
    std::vector<Matching> ms = {oracle::random_feasible(inst, rng), oracle::random_feasible(inst, rng)};
    auto stable = enumerate_stable(inst);
    if (!stable.empty()) ms.push_back(stable.front());
    FractionalMatching x = oracle::combine(inst, ms, {1, 2, 3});
    ConstraintReport rep = evaluate(inst, x);
    auto sep = separate(inst, x);
    CAPTURE(seed);
    CHECK(rep.satisfied() == !sep.has_value());
    CHECK(rep.satisfied() == oracle::in_polytope(inst, x));
  }
}

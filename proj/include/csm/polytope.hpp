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

#ifndef CSM_POLYTOPE_HPP_
#define CSM_POLYTOPE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "csm/class_forest.hpp"
#include "csm/instance.hpp"
#include "csm/matching.hpp"
#include "csm/rational.hpp"

namespace csm {

// One exact value per acceptable pair, indexed by Instance::pair_index.
using FractionalMatching = std::vector<Rational>;

FractionalMatching zero_point(const Instance& instance);
FractionalMatching indicator(const Instance& instance, const Matching& matching);

// Pairs (i', a) with i' ranked at least as high as i by a.
std::vector<Pair> tooth(const Instance& instance, int i, int a);
// x(T(i,a)) and x(T(i,a) \ {(i,a)}).
Rational tooth_value(const Instance& instance, const FractionalMatching& x, int i, int a);
Rational open_tooth_value(const Instance& instance, const FractionalMatching& x, int i, int a);

// Applicants a' of i whose pair lies in the shaft of the tuple `tuple`.
std::vector<int> shaft(const Instance& instance, const ClassForest& forest,
                       const std::vector<int>& tuple);

// x(S(A)) + sum of open teeth over A.
Rational comb_value(const Instance& instance, const ClassForest& forest,
                    const FractionalMatching& x, const std::vector<int>& tuple);

// Left and right side of the class-tuple inequality of `node`.
std::pair<Rational, Rational> class_tuple_sides(const Instance& instance,
                                                const ClassForest& forest,
                                                const FractionalMatching& x, int node,
                                                const std::vector<int>& tuple);

enum class ConstraintKind { kRow = 1, kClass = 2, kComb = 3, kNonNegative = 4, kClassTuple = 5 };

struct Violation {
  ConstraintKind kind = ConstraintKind::kRow;
  int institute = -1;
  int applicant = -1;  // rows and sign constraints
  int node = -1;       // forest node for class and class-tuple constraints
  std::vector<int> tuple;  // applicants, best first
  Rational lhs, rhs;
  Rational slack;  // amount by which the constraint fails, always positive
};

std::string describe(const Instance& instance, const std::vector<ClassForest>& forests,
                     const Violation& v);

struct ConstraintReport {
  std::vector<Violation> violations;
  long combs_checked = 0;
  long class_tuples_checked = 0;
  bool satisfied() const { return violations.empty(); }
  bool satisfies(ConstraintKind kind) const;
};

inline constexpr long kDefaultTupleCap = 1'000'000;

// Checks every constraint by enumeration. Combs range over all feasible
// tuples; throws SizeCapExceeded when an institute has more than `cap`.
ConstraintReport evaluate(const Instance& instance, const FractionalMatching& x,
                          long cap = kDefaultTupleCap);

}  // namespace csm

#endif  // CSM_POLYTOPE_HPP_

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

#ifndef CSM_SEPARATION_HPP_
#define CSM_SEPARATION_HPP_

#include <optional>
#include <vector>

#include "csm/class_forest.hpp"
#include "csm/polytope.hpp"

namespace csm {

// Bottom-up tables over one institute's forest. For a node C:
//   z(C, s, k): least value of a tuple of size s drawn from the k best
//     members of C, counting shaft terms only for those k members;
//   y(C, s, p): the same with the member at list position p included as
//     the lowest tuple member and shaft terms cut off below p.
// A tuple's value is the sum of its open teeth plus, when shaft terms are
// enabled, x over the part of the shaft inside C. nullopt is +infinity.
class SeparationTable {
 public:
  SeparationTable(const Instance& instance, const ClassForest& forest,
                  const FractionalMatching& x, bool with_shaft);

  std::optional<Rational> z(int node, int s, int k) const;
  std::optional<Rational> y(int node, int s, int rank) const;
  // Realizing tuples as applicant indices, best first.
  std::vector<int> z_tuple(int node, int s, int k) const;
  std::vector<int> y_tuple(int node, int s, int rank) const;

 private:
  struct Entry {
    bool finite = false;
    Rational value;
    std::vector<int> ranks;
  };
  using Row = std::vector<Entry>;  // indexed by tuple size

  const Row& z_row(int node, int k) const { return z_[node][k]; }
  const Row& y_row(int node, int rank) const;
  int count_above(int node, int rank) const;
  void build(int node);
  Row combine(int node, int rank_cut, int special_child, int special_rank) const;

  const Instance& instance_;
  const ClassForest& forest_;
  std::vector<Rational> w_, x_;  // per list position
  bool with_shaft_;
  std::vector<std::vector<Row>> z_;  // [node][k]
  std::vector<std::vector<Row>> y_;  // [node][index among member ranks]
};

// Violated comb or class-tuple constraints found by the tables, at most one
// of each kind per institute and node. x must satisfy the row, class and
// sign constraints.
std::vector<Violation> separate_all(const Instance& instance, const FractionalMatching& x);
std::optional<Violation> separate(const Instance& instance, const FractionalMatching& x);

}  // namespace csm

#endif  // CSM_SEPARATION_HPP_

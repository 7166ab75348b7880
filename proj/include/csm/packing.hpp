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

#ifndef CSM_PACKING_HPP_
#define CSM_PACKING_HPP_

#include <stdexcept>
#include <utility>
#include <vector>

#include "csm/class_forest.hpp"
#include "csm/instance.hpp"
#include "csm/matching.hpp"
#include "csm/polytope.hpp"

namespace csm {

// Raised when the input point turns out not to lie in the polytope, or when
// an internal packing assertion fails.
class PackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class HNotEqualE : public PackingError {
 public:
  using PackingError::PackingError;
};
class InvariantCUnsatisfiable : public PackingError {
 public:
  using PackingError::PackingError;
};
class MedianMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct HE {
  std::vector<int> h;  // greedy quota-respecting prefix of the support, best first
  std::vector<int> e;  // support members with no weight above i, best first
};

HE compute_h_e(const Instance& instance, const ClassForest& forest, const FractionalMatching& x);

struct Item {
  int applicant;
  Rational height;
  Rational offset;
};

struct Bin {
  std::vector<Item> items;  // bottom to top
  Rational fill = 0;
  int top() const { return items.empty() ? -1 : items.back().applicant; }
};

struct InstituteBins {
  HE he;
  std::vector<Bin> bins;
};

struct BinState {
  std::vector<InstituteBins> institutes;
  int phases = 0;
};

struct PackOptions {
  // Assert the bin invariants after every step and phase.
  bool check = true;
};

// Throws HNotEqualE, InvariantCUnsatisfiable or PackingError when x is not in
// the polytope.
BinState pack(const Instance& instance, const FractionalMatching& x, PackOptions options = {});

// The item crossing height alpha in every bin; alpha in [0, 1).
Matching cut(const Instance& instance, const BinState& state, const Rational& alpha);

// Distinct item offsets together with 1, ascending.
std::vector<Rational> breakpoints(const BinState& state);

// Convex combination of integral matchings equal to x. Identical matchings
// are merged.
std::vector<std::pair<Matching, Rational>> decompose(const Instance& instance,
                                                     const FractionalMatching& x);

FractionalMatching average(const Instance& instance, const std::vector<Matching>& matchings);

// Every applicant gets the ceil(k/2)-th best of its k assignments. Checked
// against the cut at 1/2 of the packed average; throws MedianMismatch when
// they differ.
Matching median(const Instance& instance, const std::vector<Matching>& matchings);

}  // namespace csm

#endif  // CSM_PACKING_HPP_

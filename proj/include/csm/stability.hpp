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

#ifndef CSM_STABILITY_HPP_
#define CSM_STABILITY_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csm/instance.hpp"
#include "csm/matching.hpp"

namespace csm {

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long kDefaultCap = 10'000'000;

struct ClassViolation {
  int institute = -1;
  // Index into the institute's declared classes; -1 for the capacity,
  // -2 for an unacceptable pair.
  int cls = -1;
  int count = 0;
  int bound = 0;
  std::string message;
};

// Declared classes are read as written, so non-laminar instances are fine.
std::optional<ClassViolation> check_feasibility(const Instance& instance,
                                                const Matching& matching);

struct BlockingPair {
  int institute;
  int applicant;
};

// Pair test for instances without lower bounds. Scans institutes, then
// applicants, in input order. Throws std::invalid_argument on lower bounds.
std::optional<BlockingPair> find_blocking_pair(const Instance& instance,
                                               const Matching& matching);

struct BlockingGroup {
  int institute;
  std::vector<int> members;  // best first
};

// Exhaustive branch and bound over each institute's candidate tuples. The
// matching must be feasible.
std::optional<BlockingGroup> find_blocking_group(const Instance& instance,
                                                 const Matching& matching,
                                                 long cap = kDefaultCap);

bool is_stable(const Instance& instance, const Matching& matching, long cap = kDefaultCap);

// Every stable matching, sorted by the applicant -> institute vector.
std::vector<Matching> enumerate_stable(const Instance& instance, long cap = kDefaultCap);

struct RuralCheck {
  std::string name;
  bool pass = true;
  std::string witness;
};

struct RuralReport {
  bool laminar = true;
  std::vector<RuralCheck> checks;
  bool all_pass() const;
};

// Checks the rural hospitals properties over a complete list of stable
// matchings. Class-level checks are skipped for non-laminar instances.
RuralReport rural_report(const Instance& instance, const std::vector<Matching>& stable);

}  // namespace csm

#endif  // CSM_STABILITY_HPP_

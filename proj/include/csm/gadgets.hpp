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

#ifndef CSM_GADGETS_HPP_
#define CSM_GADGETS_HPP_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "csm/instance.hpp"
#include "csm/matching.hpp"

namespace csm {

class MalformedClause : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Clauses of three distinct positive literals.
struct SatFormula {
  std::vector<std::string> variables;     // first-appearance order
  std::vector<std::vector<int>> clauses;  // variable indices
};

// One clause per line as three whitespace-separated variable names. Blank
// lines and lines starting with 'c' followed by a space, or with '#', are
// skipped.
SatFormula parse_formula(const std::string& text);

// True when some assignment makes exactly one literal of every clause true.
bool one_in_three_satisfiable(const SatFormula& formula);

struct GadgetInstance {
  RawInstance raw;
  // Entity id -> the gadget it belongs to, e.g. "pair c1(1,2)".
  std::map<Id, std::string> provenance;
  int pair_gadgets = 0;
  int tbar_gadgets = 0;
  int clause_gadgets = 0;
};

GadgetInstance sat_to_csm(const SatFormula& formula);

// Components checked in isolation. The T-bar gadget has institutes T1..T4
// and applicants ab1..ab6; T1 carries no classes.
RawInstance tbar_component(bool with_t1);
// Matching of the T-bar component without T1 that should be stable.
Matching tbar_feature_b(const Instance& tbar_without_t1);
// Literal-pair gadget with its outside links removed: applicants ai1, ai2,
// aj1, aj2 and institutes Ii, Ij.
RawInstance pair_component();
// The three outcomes the pair gadget may take, sorted.
std::vector<Matching> pair_outcomes(const Instance& pair);

enum class CheckStatus { kPass, kFail, kSkipped };

struct GadgetCheck {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
  bool binding = true;
};

struct GadgetReport {
  std::vector<GadgetCheck> checks;
  // Component checks only; the end-to-end check is exploratory.
  bool binding_pass() const;
};

// Runs the component checks and, when a formula is given, the end-to-end
// comparison against one_in_three_satisfiable under `cap`.
GadgetReport verify_gadgets(const SatFormula* formula, long cap);

}  // namespace csm

#endif  // CSM_GADGETS_HPP_

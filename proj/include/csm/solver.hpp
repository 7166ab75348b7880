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

#ifndef CSM_SOLVER_HPP_
#define CSM_SOLVER_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "csm/class_forest.hpp"
#include "csm/instance.hpp"
#include "csm/matching.hpp"

namespace csm {

struct Rejection {
  int applicant;
  int institute;
  int node;  // forest node whose upper bound forced the rejection
};

struct Proposal {
  int applicant;
  int institute;
};

// Bookkeeping of one institute during deferred acceptance.
struct InstituteState {
  std::set<int> held;         // list positions of provisionally accepted applicants
  std::vector<int> count;     // |mu(i) ∩ C| per node
  std::vector<int> delta;     // deficiency per node
  std::vector<int> childsum;  // sum of the children's deficiencies per node
};

struct SolverState {
  std::vector<ClassForest> forests;
  std::vector<InstituteState> institutes;
  std::vector<int> next_choice;  // per applicant, index into its list
  Matching matching;
  std::vector<Rejection> rejections;
  long proposals = 0;
};

struct InvariantReport {
  bool ok = true;
  int institute = -1;
  int node = -1;
  char which = 0;  // 'A' or 'B'
};

InvariantReport check_invariants(const SolverState& state);
InvariantReport check_invariants(const SolverState& state, int institute);

// Members of mu(i) ∩ C all of whose path nodes strictly below C are surplus,
// best first.
std::vector<int> affluent_set(const SolverState& state, int institute, int node);

struct SolveOptions {
  bool check_invariants = true;
  bool trace = false;
};

struct SolveResult {
  std::optional<Matching> matching;
  int witness = -1;  // institute left with positive root deficiency
  std::string reason;
  std::vector<Rejection> rejections;
  std::vector<Proposal> trace;
  long proposals = 0;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Deferred acceptance with deficiency numbers. The free applicant with the
// smallest index proposes next.
class Solver {
 public:
  explicit Solver(const Instance& instance, SolveOptions options = {});

  // Next (applicant, institute) proposal, if any applicant remains active.
  std::optional<Proposal> next_proposal() const;
  // Runs one iteration of the main loop. Returns false when none is left.
  bool step();
  const SolverState& state() const { return state_; }
  SolveResult finish();

 private:
  void accept(int institute, int applicant);

  const Instance& instance_;
  SolveOptions options_;
  SolverState state_;
  std::set<int> free_;
  std::vector<Proposal> trace_;
  bool infeasible_ = false;
  int infeasible_institute_ = -1;
};

SolveResult solve(const Instance& instance, SolveOptions options = {});

}  // namespace csm

#endif  // CSM_SOLVER_HPP_

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

#include "csm/solver.hpp"

namespace csm {

namespace {

bool surplus(const SolverState& s, int i, int v) {
  const auto& st = s.institutes[i];
  return st.count[v] + st.delta[v] > s.forests[i].node(v).lower;
}

// True when every node of the path of `rank` strictly below `node` is surplus.
bool affluent(const SolverState& s, int i, int node, int rank) {
  const ClassForest& f = s.forests[i];
  for (int v = f.leaf_at(rank); v != node; v = f.node(v).parent)
    if (!surplus(s, i, v)) return false;
  return true;
}

}  // namespace

InvariantReport check_invariants(const SolverState& state, int i) {
  const ClassForest& f = state.forests[i];
  const InstituteState& st = state.institutes[i];
  for (int v = 0; v < f.size(); ++v) {
    const ClassNode& n = f.node(v);
    if (!n.children.empty()) {
      int sum = 0;
      for (int c : n.children) sum += st.delta[c];
      if (st.delta[v] < sum) return {false, i, v, 'A'};
    }
    int level = st.count[v] + st.delta[v];
    if (level < n.lower || level > n.upper) return {false, i, v, 'B'};
  }
  return {};
}

InvariantReport check_invariants(const SolverState& state) {
  for (int i = 0; i < static_cast<int>(state.forests.size()); ++i) {
    auto r = check_invariants(state, i);
    if (!r.ok) return r;
  }
  return {};
}

std::vector<int> affluent_set(const SolverState& state, int i, int node) {
  const ClassForest& f = state.forests[i];
  std::vector<int> out;
  for (int r : state.institutes[i].held)
    if (f.contains_rank(node, r) && affluent(state, i, node, r))
      out.push_back(f.node(f.leaf_at(r)).members.front());
  return out;
}

Solver::Solver(const Instance& instance, SolveOptions options)
    : instance_(instance), options_(options) {
  state_.forests = preprocess(instance);
  state_.institutes.resize(instance.num_institutes());
  for (int i = 0; i < instance.num_institutes(); ++i) {
    const ClassForest& f = state_.forests[i];
    InstituteState& st = state_.institutes[i];
    st.count.assign(f.size(), 0);
    st.delta.assign(f.size(), 0);
    st.childsum.assign(f.size(), 0);
    for (int v = 0; v < f.size(); ++v) {
      const ClassNode& n = f.node(v);
      st.delta[v] = n.lower;
      if (n.lower > n.upper && !infeasible_) {
        infeasible_ = true;
        infeasible_institute_ = i;
      }
    }
    for (int v = 1; v < f.size(); ++v) st.childsum[f.node(v).parent] += st.delta[v];
  }
  state_.next_choice.assign(instance.num_applicants(), 0);
  state_.matching = empty_matching(instance);
  if (!infeasible_)
    for (int a = 0; a < instance.num_applicants(); ++a)
      if (!instance.applicant(a).preferences.empty()) free_.insert(a);
}

std::optional<Proposal> Solver::next_proposal() const {
  if (free_.empty()) return std::nullopt;
  int a = *free_.begin();
  return Proposal{a, instance_.applicant(a).preferences[state_.next_choice[a]]};
}

void Solver::accept(int i, int a) {
  const ClassForest& f = state_.forests[i];
  InstituteState& st = state_.institutes[i];
  const int rank = instance_.institute_rank(i, a);
  st.held.insert(rank);
  state_.matching[a] = i;
  const int leaf = f.leaf_at(rank);
  for (int v = leaf; v >= 0; v = f.node(v).parent) ++st.count[v];

  for (int v = f.node(leaf).parent; v >= 0; v = f.node(v).parent) {
    const ClassNode& n = f.node(v);
    if (st.delta[v] > st.childsum[v]) {
      --st.delta[v];
      if (n.parent >= 0) --st.childsum[n.parent];
    }
    if (st.count[v] + st.delta[v] <= n.upper) continue;

    int victim = -1;
    const auto& ranks = f.member_ranks(v);
    for (auto it = st.held.rbegin(); it != st.held.rend(); ++it) {
      if (*it < ranks.front() || !f.contains_rank(v, *it)) continue;
      if (affluent(state_, i, v, *it)) {
        victim = *it;
        break;
      }
    }
    if (victim < 0)
      throw InternalError("empty affluent set at institute '" + instance_.institute(i).id + "'");
    const int b = instance_.institute(i).preferences[victim];
    st.held.erase(victim);
    for (int u = f.leaf_at(victim); u >= 0; u = f.node(u).parent) --st.count[u];
    state_.matching[b] = -1;
    state_.rejections.push_back({b, i, v});
    if (state_.next_choice[b] < static_cast<int>(instance_.applicant(b).preferences.size()))
      free_.insert(b);
    break;
  }
}

bool Solver::step() {
  auto p = next_proposal();
  if (!p) return false;
  free_.erase(p->applicant);
  ++state_.next_choice[p->applicant];
  ++state_.proposals;
  if (options_.trace) trace_.push_back(*p);
  accept(p->institute, p->applicant);
  if (options_.check_invariants) {
    auto r = check_invariants(state_, p->institute);
    if (!r.ok)
      throw InternalError(std::string("invariant ") + r.which + " violated at institute '" +
                          instance_.institute(r.institute).id + "'");
  }
  return true;
}

SolveResult Solver::finish() {
  while (step()) {
  }
  SolveResult out;
  out.rejections = state_.rejections;
  out.trace = trace_;
  out.proposals = state_.proposals;
  if (infeasible_) {
    out.witness = infeasible_institute_;
    out.reason = "class bounds of institute '" + instance_.institute(infeasible_institute_).id +
                 "' admit no feasible tuple";
    return out;
  }
  for (int i = 0; i < instance_.num_institutes(); ++i) {
    if (state_.institutes[i].delta[0] > 0) {
      out.witness = i;
      out.reason = "institute '" + instance_.institute(i).id + "' keeps deficiency " +
                   std::to_string(state_.institutes[i].delta[0]);
      return out;
    }
  }
  out.matching = state_.matching;
  return out;
}

SolveResult solve(const Instance& instance, SolveOptions options) {
  Solver solver(instance, options);
  return solver.finish();
}

}  // namespace csm

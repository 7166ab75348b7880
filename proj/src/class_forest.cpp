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

#include "csm/class_forest.hpp"

#include <algorithm>
#include <map>

namespace csm {

int ClassForest::leaf_of(int applicant) const {
  for (int r = 0; r < static_cast<int>(applicant_of_rank_.size()); ++r)
    if (applicant_of_rank_[r] == applicant) return leaf_by_rank_[r];
  return -1;
}

std::vector<int> ClassForest::path_at(int rank) const {
  std::vector<int> path;
  for (int n = leaf_by_rank_[rank]; n >= 0; n = nodes_[n].parent) path.push_back(n);
  return path;
}

void ClassForest::finalize(const Instance& instance) {
  const auto& prefs = instance.institute(institute_).preferences;
  applicant_of_rank_ = prefs;
  member_ranks_.assign(nodes_.size(), {});
  for (int n = 0; n < size(); ++n) {
    auto& ranks = member_ranks_[n];
    for (int a : nodes_[n].members) ranks.push_back(instance.institute_rank(institute_, a));
    std::sort(ranks.begin(), ranks.end());
  }
  for (auto& node : nodes_) {
    std::sort(node.children.begin(), node.children.end(), [&](int x, int y) {
      return member_ranks_[x].front() < member_ranks_[y].front();
    });
  }

  tin_.assign(nodes_.size(), 0);
  tout_.assign(nodes_.size(), 0);
  bottom_up_.clear();
  int clock = 0;
  // Iterative DFS; the stack holds (node, next child index).
  std::vector<std::pair<int, int>> stack{{0, 0}};
  nodes_[0].depth = 0;
  tin_[0] = clock++;
  while (!stack.empty()) {
    auto& [n, next] = stack.back();
    if (next < static_cast<int>(nodes_[n].children.size())) {
      int c = nodes_[n].children[next++];
      nodes_[c].depth = nodes_[n].depth + 1;
      tin_[c] = clock++;
      stack.emplace_back(c, 0);
    } else {
      tout_[n] = clock++;
      bottom_up_.push_back(n);
      stack.pop_back();
    }
  }
}

ClassForest preprocess_institute(const Instance& instance, int i) {
  const Institute& inst = instance.institute(i);
  const int n = static_cast<int>(inst.preferences.size());
  auto rank = [&](int a) { return instance.institute_rank(i, a); };

  // Membership bitmaps over list positions, for the laminarity test.
  const auto& declared = inst.classes;
  const int k = static_cast<int>(declared.size());
  std::vector<std::vector<char>> bits(k, std::vector<char>(n, 0));
  for (int c = 0; c < k; ++c)
    for (int a : declared[c].members) bits[c][rank(a)] = 1;

  for (int c = 0; c < k; ++c) {
    for (int d = c + 1; d < k; ++d) {
      bool meet = false, c_out = false, d_out = false;
      for (int r = 0; r < n; ++r) {
        if (bits[c][r] && bits[d][r]) meet = true;
        if (bits[c][r] && !bits[d][r]) c_out = true;
        if (bits[d][r] && !bits[c][r]) d_out = true;
      }
      if (meet && c_out && d_out)
        throw NotLaminar(i, c, d,
                         "institute '" + inst.id + "' is not laminar: classes #" +
                             std::to_string(c + 1) + " and #" + std::to_string(d + 1) +
                             " intersect without containment");
    }
  }

  ClassForest forest;
  forest.institute_ = i;

  ClassNode root;
  root.kind = NodeKind::kRoot;
  root.members = inst.preferences;
  root.upper = inst.capacity;
  root.lower = 0;
  forest.nodes_.push_back(std::move(root));

  // Merge identical declarations.
  std::map<std::vector<char>, int> by_members;
  for (int c = 0; c < k; ++c) {
    auto [it, fresh] = by_members.emplace(bits[c], static_cast<int>(forest.nodes_.size()));
    if (fresh) {
      ClassNode node;
      node.members = declared[c].members;
      node.upper = declared[c].upper;
      node.lower = declared[c].lower;
      node.declared.push_back(c);
      forest.nodes_.push_back(std::move(node));
    } else {
      ClassNode& node = forest.nodes_[it->second];
      node.upper = std::min(node.upper, declared[c].upper);
      node.lower = std::max(node.lower, declared[c].lower);
      node.declared.push_back(c);
    }
  }
  const int num_declared = static_cast<int>(forest.nodes_.size()) - 1;

  // Parent of a declared node: the smallest declared node strictly containing
  // it. Laminarity makes the candidates a chain.
  auto strictly_contains = [&](int outer, int inner) {
    const auto& om = forest.nodes_[outer].members;
    const auto& im = forest.nodes_[inner].members;
    if (om.size() <= im.size()) return false;
    return std::all_of(im.begin(), im.end(), [&](int a) {
      return std::find(om.begin(), om.end(), a) != om.end();
    });
  };
  for (int d = 1; d <= num_declared; ++d) {
    int best = 0;
    for (int e = 1; e <= num_declared; ++e) {
      if (e == d || !strictly_contains(e, d)) continue;
      if (best == 0 || forest.nodes_[e].members.size() < forest.nodes_[best].members.size())
        best = e;
    }
    forest.nodes_[d].parent = best;
  }

  // Singleton leaves under the smallest declared class holding the applicant.
  forest.leaf_by_rank_.assign(n, -1);
  for (int r = 0; r < n; ++r) {
    int a = inst.preferences[r];
    int best = 0;
    for (int d = 1; d <= num_declared; ++d) {
      const auto& m = forest.nodes_[d].members;
      if (std::find(m.begin(), m.end(), a) == m.end()) continue;
      if (best == 0 || m.size() < forest.nodes_[best].members.size()) best = d;
    }
    ClassNode leaf;
    leaf.kind = NodeKind::kLeaf;
    leaf.members = {a};
    leaf.upper = 1;
    leaf.lower = 0;
    leaf.parent = best;
    forest.leaf_by_rank_[r] = static_cast<int>(forest.nodes_.size());
    forest.nodes_.push_back(std::move(leaf));
  }

  for (int v = 1; v < forest.size(); ++v)
    forest.nodes_[forest.nodes_[v].parent].children.push_back(v);

  forest.finalize(instance);

  // Lift lower bounds bottom-up; the root's lower is the sum over its children.
  for (int v : forest.bottom_up_) {
    ClassNode& node = forest.nodes_[v];
    if (node.children.empty()) continue;
    int sum = 0;
    for (int c : node.children) sum += forest.nodes_[c].lower;
    node.lower = node.kind == NodeKind::kRoot ? sum : std::max(node.lower, sum);
  }
  return forest;
}

std::vector<ClassForest> preprocess(const Instance& instance) {
  std::vector<ClassForest> forests;
  forests.reserve(instance.num_institutes());
  for (int i = 0; i < instance.num_institutes(); ++i)
    forests.push_back(preprocess_institute(instance, i));
  return forests;
}

int forest_rank(const ClassForest& forest) {
  // Greedy is exact: laminar upper bounds form a matroid.
  std::vector<int> count(forest.size(), 0);
  int taken = 0;
  const int n = static_cast<int>(forest.member_ranks(forest.root()).size());
  for (int r = 0; r < n; ++r) {
    auto path = forest.path_at(r);
    bool ok = std::all_of(path.begin(), path.end(),
                          [&](int v) { return count[v] < forest.node(v).upper; });
    if (!ok) continue;
    for (int v : path) ++count[v];
    ++taken;
  }
  return taken;
}

}  // namespace csm

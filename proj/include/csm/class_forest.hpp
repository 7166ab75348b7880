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

#ifndef CSM_CLASS_FOREST_HPP_
#define CSM_CLASS_FOREST_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "csm/instance.hpp"

namespace csm {

class NotLaminar : public std::runtime_error {
 public:
  NotLaminar(int institute, int first_class, int second_class, const std::string& what)
      : std::runtime_error(what),
        institute_(institute),
        first_(first_class),
        second_(second_class) {}
  int institute() const { return institute_; }
  // Indices into the institute's declared classes.
  int first_class() const { return first_; }
  int second_class() const { return second_; }

 private:
  int institute_;
  int first_;
  int second_;
};

enum class NodeKind { kRoot, kDeclared, kLeaf };

struct ClassNode {
  NodeKind kind = NodeKind::kDeclared;
  std::vector<int> members;  // applicant indices, best-ranked first
  int upper = 1;
  int lower = 0;
  int parent = -1;
  std::vector<int> children;
  int depth = 0;
  // Declared classes merged into this node (duplicates collapse into one).
  std::vector<int> declared;
};

// The laminar classification of one institute as a rooted tree. Node 0 is
// the root holding the whole preference list with upper bound Q(i); every
// listed applicant owns a singleton leaf.
class ClassForest {
 public:
  int institute() const { return institute_; }
  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const ClassNode& node(int n) const { return nodes_[n]; }
  const std::vector<ClassNode>& nodes() const { return nodes_; }

  // Leaf of the applicant at position `rank` of L^i.
  int leaf_at(int rank) const { return leaf_by_rank_[rank]; }
  int leaf_of(int applicant) const;
  // Leaf-to-root node sequence a(C(i)).
  std::vector<int> path_at(int rank) const;

  // True when `ancestor` lies on the root path of `node` (inclusive).
  bool is_ancestor(int ancestor, int node) const {
    return tin_[ancestor] <= tin_[node] && tout_[node] <= tout_[ancestor];
  }
  bool contains_rank(int node, int rank) const { return is_ancestor(node, leaf_at(rank)); }
  // Institute-list positions of a node's members, ascending.
  const std::vector<int>& member_ranks(int node) const { return member_ranks_[node]; }

  // Post-order: children before parents.
  const std::vector<int>& bottom_up() const { return bottom_up_; }

  friend ClassForest preprocess_institute(const Instance& instance, int institute);

 private:
  void finalize(const Instance& instance);

  int institute_ = -1;
  std::vector<ClassNode> nodes_;
  std::vector<int> leaf_by_rank_;
  std::vector<int> applicant_of_rank_;
  std::vector<std::vector<int>> member_ranks_;
  std::vector<int> tin_, tout_;
  std::vector<int> bottom_up_;
};

// Builds the tree for one institute. Duplicate declarations are merged with
// the larger lower and smaller upper bound; lower bounds are lifted so every
// node's lower is at least the sum over its children.
ClassForest preprocess_institute(const Instance& instance, int institute);

// Throws NotLaminar for the first institute with intersecting classes.
std::vector<ClassForest> preprocess(const Instance& instance);

// Maximum size of a tuple respecting every upper bound of the forest.
int forest_rank(const ClassForest& forest);

}  // namespace csm

#endif  // CSM_CLASS_FOREST_HPP_

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

#include "csm/polytope.hpp"

#include <algorithm>

#include "csm/stability.hpp"

namespace csm {

FractionalMatching zero_point(const Instance& instance) {
  return FractionalMatching(instance.num_pairs(), Rational(0));
}

FractionalMatching indicator(const Instance& instance, const Matching& matching) {
  FractionalMatching x = zero_point(instance);
  for (int a = 0; a < static_cast<int>(matching.size()); ++a)
    if (matching[a] >= 0) x[instance.pair_index(matching[a], a)] = 1;
  return x;
}

std::vector<Pair> tooth(const Instance& instance, int i, int a) {
  std::vector<Pair> out;
  const int limit = instance.applicant_rank(a, i);
  const auto& prefs = instance.applicant(a).preferences;
  for (int r = 0; r <= limit; ++r) out.push_back({prefs[r], a});
  return out;
}

Rational open_tooth_value(const Instance& instance, const FractionalMatching& x, int i, int a) {
  Rational sum = 0;
  const int limit = instance.applicant_rank(a, i);
  const auto& prefs = instance.applicant(a).preferences;
  for (int r = 0; r < limit; ++r) sum += x[instance.pair_index(prefs[r], a)];
  return sum;
}

Rational tooth_value(const Instance& instance, const FractionalMatching& x, int i, int a) {
  return open_tooth_value(instance, x, i, a) + x[instance.pair_index(i, a)];
}

namespace {

std::vector<int> ranks_of(const Instance& instance, int i, const std::vector<int>& tuple) {
  std::vector<int> ranks;
  for (int a : tuple) ranks.push_back(instance.institute_rank(i, a));
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

bool in_shaft(const ClassForest& f, const std::vector<int>& tuple_ranks, int r) {
  for (int v = f.leaf_at(r); v >= 0; v = f.node(v).parent) {
    int above = 0;
    for (int t : tuple_ranks)
      if (t < r && f.contains_rank(v, t)) ++above;
    if (above >= f.node(v).upper) return false;
  }
  return true;
}

}  // namespace

std::vector<int> shaft(const Instance& instance, const ClassForest& forest,
                       const std::vector<int>& tuple) {
  const int i = forest.institute();
  auto ranks = ranks_of(instance, i, tuple);
  const auto& prefs = instance.institute(i).preferences;
  std::vector<int> out;
  for (int r = 0; r < static_cast<int>(prefs.size()); ++r)
    if (in_shaft(forest, ranks, r)) out.push_back(prefs[r]);
  return out;
}

Rational comb_value(const Instance& instance, const ClassForest& forest,
                    const FractionalMatching& x, const std::vector<int>& tuple) {
  const int i = forest.institute();
  Rational sum = 0;
  for (int a : shaft(instance, forest, tuple)) sum += x[instance.pair_index(i, a)];
  for (int a : tuple) sum += open_tooth_value(instance, x, i, a);
  return sum;
}

std::pair<Rational, Rational> class_tuple_sides(const Instance& instance,
                                                const ClassForest& forest,
                                                const FractionalMatching& x, int node,
                                                const std::vector<int>& tuple) {
  const int i = forest.institute();
  Rational lhs = 0, rhs = 0;
  int lowest = -1;
  for (int a : tuple) {
    lhs += open_tooth_value(instance, x, i, a);
    lowest = std::max(lowest, instance.institute_rank(i, a));
  }
  for (int r : forest.member_ranks(node))
    if (r > lowest) rhs += x[instance.pair_offset(i) + r];
  return {lhs, rhs};
}

bool ConstraintReport::satisfies(ConstraintKind kind) const {
  return std::none_of(violations.begin(), violations.end(),
                      [&](const Violation& v) { return v.kind == kind; });
}

std::string describe(const Instance& instance, const std::vector<ClassForest>& forests,
                     const Violation& v) {
  auto list = [&](const std::vector<int>& apps) {
    std::string s;
    for (size_t k = 0; k < apps.size(); ++k) s += (k ? "," : "") + instance.applicant(apps[k]).id;
    return s;
  };
  std::string where;
  std::string name;
  switch (v.kind) {
    case ConstraintKind::kRow:
      name = "row constraint";
      where = "applicant '" + instance.applicant(v.applicant).id + "'";
      break;
    case ConstraintKind::kNonNegative:
      name = "sign constraint";
      where = "pair (" + instance.institute(v.institute).id + ", " +
              instance.applicant(v.applicant).id + ")";
      break;
    case ConstraintKind::kClass:
      name = "class constraint";
      where = "institute '" + instance.institute(v.institute).id + "' class {" +
              list(forests[v.institute].node(v.node).members) + "}";
      break;
    case ConstraintKind::kComb:
      name = "comb constraint";
      where = "institute '" + instance.institute(v.institute).id + "' tuple (" + list(v.tuple) +
              ")";
      break;
    case ConstraintKind::kClassTuple:
      name = "class-tuple constraint";
      where = "institute '" + instance.institute(v.institute).id + "' class {" +
              list(forests[v.institute].node(v.node).members) + "} tuple (" + list(v.tuple) +
              ")";
      break;
  }
  return name + " violated at " + where + ": lhs " + to_string(v.lhs) + ", rhs " +
         to_string(v.rhs) + ", slack " + to_string(v.slack);
}

namespace {

// Enumerates tuples from `ranks` (ascending list positions) that respect the
// upper bounds of the nodes accepted by `checked`.
template <typename Checked, typename Visit>
void for_each_tuple(const ClassForest& f, const std::vector<int>& ranks, int max_size,
                    Checked checked, Visit visit, long& budget) {
  std::vector<int> count(f.size(), 0);
  std::vector<int> chosen;
  auto dfs = [&](auto&& self, size_t from) -> void {
    if (--budget < 0) throw SizeCapExceeded("tuple enumeration exceeded the size cap");
    if (!chosen.empty()) visit(chosen);
    if (static_cast<int>(chosen.size()) == max_size) return;
    for (size_t p = from; p < ranks.size(); ++p) {
      int r = ranks[p];
      bool fits = true;
      for (int v = f.leaf_at(r); v >= 0; v = f.node(v).parent)
        if (checked(v) && count[v] == f.node(v).upper) fits = false;
      if (!fits) continue;
      for (int v = f.leaf_at(r); v >= 0; v = f.node(v).parent) ++count[v];
      chosen.push_back(r);
      self(self, p + 1);
      chosen.pop_back();
      for (int v = f.leaf_at(r); v >= 0; v = f.node(v).parent) --count[v];
    }
  };
  dfs(dfs, 0);
}

}  // namespace

ConstraintReport evaluate(const Instance& instance, const FractionalMatching& x, long cap) {
  ConstraintReport report;
  auto forests = preprocess(instance);

  for (int a = 0; a < instance.num_applicants(); ++a) {
    Rational sum = 0;
    for (int i : instance.applicant(a).preferences) sum += x[instance.pair_index(i, a)];
    if (sum > 1) {
      Violation v;
      v.kind = ConstraintKind::kRow;
      v.applicant = a;
      v.lhs = sum;
      v.rhs = 1;
      v.slack = sum - 1;
      report.violations.push_back(v);
    }
  }
  for (int p = 0; p < instance.num_pairs(); ++p) {
    if (x[p] < 0) {
      Violation v;
      v.kind = ConstraintKind::kNonNegative;
      v.institute = instance.pairs()[p].institute;
      v.applicant = instance.pairs()[p].applicant;
      v.lhs = x[p];
      v.rhs = 0;
      v.slack = -x[p];
      report.violations.push_back(v);
    }
  }

  for (int i = 0; i < instance.num_institutes(); ++i) {
    const ClassForest& f = forests[i];
    const int offset = instance.pair_offset(i);
    auto to_apps = [&](const std::vector<int>& ranks) {
      std::vector<int> apps;
      for (int r : ranks) apps.push_back(instance.institute(i).preferences[r]);
      return apps;
    };

    for (int node = 0; node < f.size(); ++node) {
      Rational sum = 0;
      for (int r : f.member_ranks(node)) sum += x[offset + r];
      if (sum > f.node(node).upper) {
        Violation v;
        v.kind = ConstraintKind::kClass;
        v.institute = i;
        v.node = node;
        v.lhs = sum;
        v.rhs = f.node(node).upper;
        v.slack = sum - f.node(node).upper;
        report.violations.push_back(v);
      }
    }

    long budget = cap;
    for_each_tuple(
        f, f.member_ranks(f.root()), f.node(f.root()).upper, [](int) { return true; },
        [&](const std::vector<int>& ranks) {
          ++report.combs_checked;
          auto tuple = to_apps(ranks);
          Rational value = comb_value(instance, f, x, tuple);
          Rational size = static_cast<long>(tuple.size());
          if (value < size) {
            Violation v;
            v.kind = ConstraintKind::kComb;
            v.institute = i;
            v.tuple = tuple;
            v.lhs = value;
            v.rhs = size;
            v.slack = size - value;
            report.violations.push_back(v);
          }
        },
        budget);

    for (int node = 0; node < f.size(); ++node) {
      const int q = f.node(node).upper;
      if (q > static_cast<int>(f.member_ranks(node).size())) continue;
      budget = cap;
      for_each_tuple(
          f, f.member_ranks(node), q,
          [&](int v) { return v != node && f.is_ancestor(node, v); },
          [&](const std::vector<int>& ranks) {
            if (static_cast<int>(ranks.size()) != q) return;
            ++report.class_tuples_checked;
            auto tuple = to_apps(ranks);
            auto [lhs, rhs] = class_tuple_sides(instance, f, x, node, tuple);
            if (lhs < rhs) {
              Violation v;
              v.kind = ConstraintKind::kClassTuple;
              v.institute = i;
              v.node = node;
              v.tuple = tuple;
              v.lhs = lhs;
              v.rhs = rhs;
              v.slack = rhs - lhs;
              report.violations.push_back(v);
            }
          },
          budget);
    }
  }
  return report;
}

}  // namespace csm

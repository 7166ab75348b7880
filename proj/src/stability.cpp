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

#include "csm/stability.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "csm/class_forest.hpp"

namespace csm {

namespace {

bool contains(const std::vector<int>& members, int a) {
  return std::find(members.begin(), members.end(), a) != members.end();
}

}  // namespace

std::optional<ClassViolation> check_feasibility(const Instance& instance,
                                                const Matching& matching) {
  for (int a = 0; a < static_cast<int>(matching.size()); ++a) {
    int i = matching[a];
    if (i >= 0 && !instance.acceptable(i, a))
      return ClassViolation{i, -2, 0, 0,
                            "pair (" + instance.institute(i).id + ", " +
                                instance.applicant(a).id + ") is not acceptable"};
  }
  auto groups = by_institute(instance, matching);
  for (int i = 0; i < instance.num_institutes(); ++i) {
    const Institute& inst = instance.institute(i);
    int size = static_cast<int>(groups[i].size());
    if (size > inst.capacity)
      return ClassViolation{i, -1, size, inst.capacity,
                            "institute '" + inst.id + "' holds " + std::to_string(size) +
                                " > capacity " + std::to_string(inst.capacity)};
    for (int c = 0; c < static_cast<int>(inst.classes.size()); ++c) {
      const ClassSpec& cls = inst.classes[c];
      int count = 0;
      for (int a : groups[i])
        if (contains(cls.members, a)) ++count;
      if (count > cls.upper)
        return ClassViolation{i, c, count, cls.upper,
                              "institute '" + inst.id + "' class #" + std::to_string(c + 1) +
                                  ": " + std::to_string(count) + " > upper " +
                                  std::to_string(cls.upper)};
      if (count < cls.lower)
        return ClassViolation{i, c, count, cls.lower,
                              "institute '" + inst.id + "' class #" + std::to_string(c + 1) +
                                  ": " + std::to_string(count) + " < lower " +
                                  std::to_string(cls.lower)};
    }
  }
  return std::nullopt;
}

std::optional<BlockingPair> find_blocking_pair(const Instance& instance,
                                               const Matching& matching) {
  if (instance.has_lower_bounds())
    throw std::invalid_argument("blocking pairs characterize stability only without lower bounds");
  auto groups = by_institute(instance, matching);
  for (int i = 0; i < instance.num_institutes(); ++i) {
    const Institute& inst = instance.institute(i);
    for (int a : inst.preferences) {
      if (!instance.applicant_prefers(a, i, matching[a])) continue;
      const int r = instance.institute_rank(i, a);
      int above = 0;
      for (int b : groups[i])
        if (instance.institute_rank(i, b) < r) ++above;
      if (above >= inst.capacity) continue;
      bool room = true;
      for (const auto& cls : inst.classes) {
        if (!contains(cls.members, a)) continue;
        int in_class = 0;
        for (int b : groups[i])
          if (instance.institute_rank(i, b) < r && contains(cls.members, b)) ++in_class;
        if (in_class >= cls.upper) {
          room = false;
          break;
        }
      }
      if (room) return BlockingPair{i, a};
    }
  }
  return std::nullopt;
}

namespace {

// Depth-first search for one institute's blocking group.
class GroupSearch {
 public:
  GroupSearch(const Instance& instance, const Matching& matching, int i,
              const std::vector<int>& current, long& budget)
      : instance_(instance), matching_(matching), i_(i), current_(current), budget_(budget) {
    const Institute& inst = instance.institute(i);
    for (int a : inst.preferences)
      if (matching[a] == i || instance.applicant_prefers(a, i, matching[a]))
        candidates_.push_back(a);
    const int n = static_cast<int>(candidates_.size());
    const int k = static_cast<int>(inst.classes.size());
    in_class_.assign(n, std::vector<char>(k, 0));
    suffix_.assign(n + 1, std::vector<int>(k, 0));
    for (int p = n - 1; p >= 0; --p) {
      for (int c = 0; c < k; ++c) {
        in_class_[p][c] = contains(inst.classes[c].members, candidates_[p]);
        suffix_[p][c] = suffix_[p + 1][c] + in_class_[p][c];
      }
    }
    count_.assign(k, 0);
  }

  std::optional<std::vector<int>> run() {
    if (dfs(0)) return chosen_;
    return std::nullopt;
  }

 private:
  bool improves() const {
    const int k = static_cast<int>(current_.size());
    if (static_cast<int>(chosen_.size()) > k) return true;
    for (int l = 0; l < k; ++l) {
      int g = chosen_[l];
      if (instance_.institute_rank(i_, g) < instance_.institute_rank(i_, current_[l]) &&
          matching_[g] != i_)
        return true;
    }
    return false;
  }

  bool lowers_met() const {
    const auto& classes = instance_.institute(i_).classes;
    for (size_t c = 0; c < classes.size(); ++c)
      if (count_[c] < classes[c].lower) return false;
    return true;
  }

  bool dfs(int from) {
    if (--budget_ < 0) throw SizeCapExceeded("blocking-group search exceeded the size cap");
    const Institute& inst = instance_.institute(i_);
    const int size = static_cast<int>(chosen_.size());
    const int k = static_cast<int>(current_.size());
    const int n = static_cast<int>(candidates_.size());
    if (size >= k && lowers_met() && improves()) return true;
    if (size == inst.capacity) return false;
    for (size_t c = 0; c < inst.classes.size(); ++c)
      if (count_[c] + suffix_[from][c] < inst.classes[c].lower) return false;
    if (size + (n - from) < k) return false;

    for (int p = from; p < n; ++p) {
      int a = candidates_[p];
      if (size < k &&
          instance_.institute_rank(i_, a) > instance_.institute_rank(i_, current_[size]))
        break;
      bool fits = true;
      for (size_t c = 0; c < inst.classes.size(); ++c)
        if (in_class_[p][c] && count_[c] == inst.classes[c].upper) fits = false;
      if (!fits) continue;
      for (size_t c = 0; c < inst.classes.size(); ++c) count_[c] += in_class_[p][c];
      chosen_.push_back(a);
      if (dfs(p + 1)) return true;
      chosen_.pop_back();
      for (size_t c = 0; c < inst.classes.size(); ++c) count_[c] -= in_class_[p][c];
    }
    return false;
  }

  const Instance& instance_;
  const Matching& matching_;
  int i_;
  const std::vector<int>& current_;
  long& budget_;
  std::vector<int> candidates_;
  std::vector<std::vector<char>> in_class_;
  std::vector<std::vector<int>> suffix_;
  std::vector<int> count_;
  std::vector<int> chosen_;
};

}  // namespace

std::optional<BlockingGroup> find_blocking_group(const Instance& instance,
                                                 const Matching& matching, long cap) {
  auto groups = by_institute(instance, matching);
  long budget = cap;
  for (int i = 0; i < instance.num_institutes(); ++i) {
    GroupSearch search(instance, matching, i, groups[i], budget);
    if (auto g = search.run()) return BlockingGroup{i, *g};
  }
  return std::nullopt;
}

bool is_stable(const Instance& instance, const Matching& matching, long cap) {
  return !check_feasibility(instance, matching) && !find_blocking_group(instance, matching, cap);
}

namespace {

class Enumerator {
 public:
  Enumerator(const Instance& instance, long cap) : instance_(instance), cap_(cap) {
    matching_ = empty_matching(instance);
    load_.assign(instance.num_institutes(), 0);
    for (int i = 0; i < instance.num_institutes(); ++i)
      class_load_.emplace_back(instance.institute(i).classes.size(), 0);
    member_of_.resize(instance.num_applicants());
    for (int i = 0; i < instance.num_institutes(); ++i) {
      const auto& classes = instance.institute(i).classes;
      for (int c = 0; c < static_cast<int>(classes.size()); ++c)
        for (int a : classes[c].members) member_of_[a].push_back({i, c});
    }
  }

  std::vector<Matching> run() {
    dfs(0);
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return out_;
  }

 private:
  bool fits(int a, int i) const {
    if (load_[i] == instance_.institute(i).capacity) return false;
    for (auto [j, c] : member_of_[a])
      if (j == i && class_load_[i][c] == instance_.institute(i).classes[c].upper) return false;
    return true;
  }

  void place(int a, int i, int delta) {
    load_[i] += delta;
    for (auto [j, c] : member_of_[a])
      if (j == i) class_load_[i][c] += delta;
  }

  void dfs(int a) {
    if (a == instance_.num_applicants()) {
      if (!check_feasibility(instance_, matching_) &&
          !find_blocking_group(instance_, matching_, cap_))
        out_.push_back(matching_);
      return;
    }
    matching_[a] = -1;
    dfs(a + 1);
    for (int i : instance_.applicant(a).preferences) {
      if (!fits(a, i)) continue;
      place(a, i, 1);
      matching_[a] = i;
      dfs(a + 1);
      matching_[a] = -1;
      place(a, i, -1);
    }
  }

  const Instance& instance_;
  long cap_;
  Matching matching_;
  std::vector<int> load_;
  std::vector<std::vector<int>> class_load_;
  std::vector<std::vector<std::pair<int, int>>> member_of_;
  std::vector<Matching> out_;
};

}  // namespace

std::vector<Matching> enumerate_stable(const Instance& instance, long cap) {
  double space = 1;
  for (const auto& app : instance.applicants()) {
    space *= static_cast<double>(app.preferences.size() + 1);
    if (space > static_cast<double>(cap))
      throw SizeCapExceeded("enumeration space exceeds the size cap of " + std::to_string(cap));
  }
  return Enumerator(instance, cap).run();
}

bool RuralReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RuralCheck& c) { return c.pass; });
}

namespace {

std::string ids(const Instance& instance, const std::vector<int>& applicants) {
  std::string out = "{";
  for (size_t k = 0; k < applicants.size(); ++k)
    out += (k ? "," : "") + instance.applicant(applicants[k]).id;
  return out + "}";
}

// Members of mu(i) inside a forest node.
std::vector<int> restrict_to(const ClassForest& f, const std::vector<int>& held, int node,
                             const Instance& instance) {
  std::vector<int> out;
  for (int a : held)
    if (f.contains_rank(node, instance.institute_rank(f.institute(), a))) out.push_back(a);
  return out;
}

}  // namespace

RuralReport rural_report(const Instance& instance, const std::vector<Matching>& stable) {
  RuralReport report;
  RuralCheck sizes{"equal cardinality per institute and overall", true, ""};
  RuralCheck assigned{"identical assigned-applicant set", true, ""};
  std::vector<std::vector<std::vector<int>>> groups;
  for (const auto& m : stable) groups.push_back(by_institute(instance, m));

  for (size_t s = 1; s < stable.size() && sizes.pass; ++s) {
    for (int i = 0; i < instance.num_institutes(); ++i) {
      if (groups[s][i].size() != groups[0][i].size()) {
        sizes.pass = false;
        sizes.witness = "institute '" + instance.institute(i).id + "' gets " +
                        std::to_string(groups[0][i].size()) + " in matching #1 but " +
                        std::to_string(groups[s][i].size()) + " in matching #" +
                        std::to_string(s + 1) + " (sizes " +
                        std::to_string(matching_size(stable[0])) + " vs " +
                        std::to_string(matching_size(stable[s])) + ")";
        break;
      }
    }
  }
  for (size_t s = 1; s < stable.size() && assigned.pass; ++s) {
    for (int a = 0; a < instance.num_applicants(); ++a) {
      if ((stable[s][a] >= 0) != (stable[0][a] >= 0)) {
        assigned.pass = false;
        assigned.witness = "applicant '" + instance.applicant(a).id +
                           "' is matched in only one of matchings #1 and #" +
                           std::to_string(s + 1);
        break;
      }
    }
  }
  report.checks.push_back(sizes);
  report.checks.push_back(assigned);

  std::vector<ClassForest> forests;
  try {
    forests = preprocess(instance);
  } catch (const NotLaminar&) {
    report.laminar = false;
    return report;
  }

  RuralCheck counts{"constant counts on the bottleneck partition", true, ""};
  RuralCheck fixed{"identical sets in classes below the bottleneck", true, ""};
  RuralCheck varying{"varying classes nest with a maximal bottleneck class", true, ""};

  for (int i = 0; i < instance.num_institutes(); ++i) {
    const ClassForest& f = forests[i];
    for (size_t s = 0; s < stable.size(); ++s) {
      const auto& held = groups[s][i];
      std::vector<char> bottleneck(f.size(), 0);
      for (int v = 0; v < f.size(); ++v)
        bottleneck[v] =
            static_cast<int>(restrict_to(f, held, v, instance).size()) == f.node(v).upper;
      // Maximal bottleneck nodes, then maximal nodes disjoint from them.
      std::vector<int> top, rest;
      for (int v = 0; v < f.size(); ++v) {
        if (!bottleneck[v]) continue;
        bool maximal = true;
        for (int u = f.node(v).parent; u >= 0; u = f.node(u).parent)
          if (bottleneck[u]) maximal = false;
        if (maximal) top.push_back(v);
      }
      auto meets_top = [&](int v) {
        for (int t : top)
          if (f.is_ancestor(t, v) || f.is_ancestor(v, t)) return true;
        return false;
      };
      for (int v = 0; v < f.size(); ++v) {
        if (meets_top(v)) continue;
        int p = f.node(v).parent;
        if (p < 0 || meets_top(p)) rest.push_back(v);
      }
      auto inside_rest = [&](int v) {
        for (int d : rest)
          if (f.is_ancestor(d, v)) return true;
        return false;
      };
      // A node made only of D classes: every leaf below it sits under D.
      auto covered_by_rest = [&](int v) {
        for (int r : f.member_ranks(v))
          if (!inside_rest(f.leaf_at(r))) return false;
        return true;
      };

      for (size_t t = 0; t < stable.size(); ++t) {
        if (t == s) continue;
        const auto& other = groups[t][i];
        auto mark = [&](RuralCheck& check, int v, const std::string& what) {
          if (!check.pass) return;
          check.pass = false;
          check.witness = "institute '" + instance.institute(i).id + "' class " +
                          ids(instance, f.node(v).members) + ": " + what + " (matchings #" +
                          std::to_string(s + 1) + ", #" + std::to_string(t + 1) + ")";
        };
        std::vector<int> partition = top;
        partition.insert(partition.end(), rest.begin(), rest.end());
        for (int v : partition)
          if (restrict_to(f, held, v, instance).size() != restrict_to(f, other, v, instance).size())
            mark(counts, v, "count differs");
        for (int v = 0; v < f.size(); ++v) {
          bool same = restrict_to(f, held, v, instance) == restrict_to(f, other, v, instance);
          if (covered_by_rest(v) && !same) mark(fixed, v, "set differs");
          if (!same) {
            bool nested = false;
            for (int b : top)
              if (f.is_ancestor(b, v) || f.is_ancestor(v, b)) nested = true;
            if (!nested) mark(varying, v, "set differs away from every maximal bottleneck");
          }
        }
      }
    }
  }
  report.checks.push_back(counts);
  report.checks.push_back(fixed);
  report.checks.push_back(varying);
  return report;
}

}  // namespace csm

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

#ifndef CSM_TESTS_ORACLES_HPP_
#define CSM_TESTS_ORACLES_HPP_

// Brute-force reference implementations. They read only the declared
// classes and preference lists, never the class forest or solver state.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "csm/generator.hpp"
#include "csm/instance.hpp"
#include "csm/io.hpp"
#include "csm/many_to_many.hpp"
#include "csm/matching.hpp"

#ifndef CSM_FIXTURE_DIR
#define CSM_FIXTURE_DIR "fixtures"
#endif

namespace oracle {

using csm::Instance;
using csm::Matching;

inline std::string fixture(const std::string& name) {
  return std::string(CSM_FIXTURE_DIR) + "/" + name;
}

inline Instance load_fixture(const std::string& name) { return csm::load_instance(fixture(name)); }

inline Matching load_matching(const Instance& inst, const std::string& name) {
  return csm::parse_matching(csm::read_file(fixture(name)), inst);
}

// Capacity and both class bounds over a set of applicants at institute i.
inline bool feasible_tuple(const Instance& inst, int i, const std::vector<int>& members) {
  const auto& in = inst.institute(i);
  if (static_cast<int>(members.size()) > in.capacity) return false;
  for (const auto& c : in.classes) {
    int n = 0;
    for (int a : members)
      if (std::find(c.members.begin(), c.members.end(), a) != c.members.end()) ++n;
    if (n < c.lower || n > c.upper) return false;
  }
  return true;
}

inline std::vector<int> tuple_at(const Instance& inst, const Matching& m, int i) {
  std::vector<int> t;
  for (int a : inst.institute(i).preferences)
    if (m[a] == i) t.push_back(a);
  return t;
}

inline bool feasible_matching(const Instance& inst, const Matching& m) {
  for (int a = 0; a < inst.num_applicants(); ++a)
    if (m[a] >= 0 && !inst.acceptable(m[a], a)) return false;
  for (int i = 0; i < inst.num_institutes(); ++i)
    if (!feasible_tuple(inst, i, tuple_at(inst, m, i))) return false;
  return true;
}

// a weakly prefers i to its partner in m.
inline bool weakly_prefers(const Instance& inst, const Matching& m, int a, int i) {
  if (m[a] == i) return true;
  int r = inst.applicant_rank(a, i);
  if (r < 0) return false;
  return m[a] < 0 || r < inst.applicant_rank(a, m[a]);
}

// a likes institute i (or -1) at least as much as j.
inline bool at_least_as_good(const Instance& inst, int a, int i, int j) {
  if (i == j) return true;
  if (i < 0) return false;
  return j < 0 || inst.applicant_rank(a, i) < inst.applicant_rank(a, j);
}

inline bool strictly_prefers(const Instance& inst, const Matching& m, int a, int i) {
  return m[a] != i && weakly_prefers(inst, m, a, i);
}

// Every subset of i's list is tried as a blocking group.
inline bool has_blocking_group(const Instance& inst, const Matching& m, int i) {
  const auto& list = inst.institute(i).preferences;
  const int n = static_cast<int>(list.size());
  const auto current = tuple_at(inst, m, i);
  const int k = static_cast<int>(current.size());
  auto rank = [&](int a) { return inst.institute_rank(i, a); };
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> g;
    for (int r = 0; r < n; ++r)
      if (mask >> r & 1) g.push_back(list[r]);
    const int kk = static_cast<int>(g.size());
    if (kk < k || !feasible_tuple(inst, i, g)) continue;
    bool willing = std::all_of(g.begin(), g.end(), [&](int a) { return weakly_prefers(inst, m, a, i); });
    if (!willing) continue;
    bool dominates = true, strict = kk > k;
    for (int j = 0; j < k; ++j) {
      if (rank(g[j]) > rank(current[j])) dominates = false;
      if (rank(g[j]) < rank(current[j]) && strictly_prefers(inst, m, g[j], i)) strict = true;
    }
    if (dominates && strict) return true;
  }
  return false;
}

inline bool is_stable(const Instance& inst, const Matching& m) {
  if (!feasible_matching(inst, m)) return false;
  for (int i = 0; i < inst.num_institutes(); ++i)
    if (has_blocking_group(inst, m, i)) return false;
  return true;
}

// All stable matchings, sorted. Partial assignments are pruned only on
// capacity and upper bounds.
inline std::vector<Matching> stable_matchings(const Instance& inst) {
  std::vector<Matching> out;
  Matching m = csm::empty_matching(inst);
  auto over = [&](int i) {
    auto t = tuple_at(inst, m, i);
    const auto& in = inst.institute(i);
    if (static_cast<int>(t.size()) > in.capacity) return true;
    for (const auto& c : in.classes) {
      int n = 0;
      for (int a : t)
        if (std::find(c.members.begin(), c.members.end(), a) != c.members.end()) ++n;
      if (n > c.upper) return true;
    }
    return false;
  };
  auto rec = [&](auto& self, int a) -> void {
    if (a == inst.num_applicants()) {
      if (oracle::is_stable(inst, m)) out.push_back(m);
      return;
    }
    m[a] = -1;
    self(self, a + 1);
    for (int i : inst.applicant(a).preferences) {
      m[a] = i;
      if (!over(i)) self(self, a + 1);
    }
    m[a] = -1;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// Positions of an institute's tuple in its own list; smaller is better.
inline std::vector<int> ranks_of(const Instance& inst, const Matching& m, int i) {
  std::vector<int> r;
  for (int a : tuple_at(inst, m, i)) r.push_back(inst.institute_rank(i, a));
  return r;
}

// Lexicographic median of an institute's outcomes over the given matchings,
// outcomes ordered best first; ties keep input order.
inline std::vector<int> lexicographic_median(const Instance& inst, const std::vector<Matching>& ms,
                                             int i) {
  std::vector<std::vector<int>> outcomes;
  for (const auto& m : ms) outcomes.push_back(ranks_of(inst, m, i));
  std::stable_sort(outcomes.begin(), outcomes.end());
  return outcomes[(outcomes.size() - 1) / 2];
}

// Random laminar instance of the shared test corpus.
inline csm::RawInstance corpus_instance(std::uint64_t seed, int max_institutes, int max_applicants,
                                        double lower_probability) {
  csm::GenConfig cfg;
  cfg.seed = seed;
  cfg.institutes = 1 + static_cast<int>(seed % max_institutes);
  cfg.applicants = std::min(max_applicants, 3 + static_cast<int>((seed / max_institutes) % max_applicants));
  cfg.density = 0.45 + 0.1 * static_cast<double>(seed % 3);
  cfg.max_depth = 2;
  cfg.min_capacity = 1;
  cfg.max_capacity = 3;
  cfg.lower_probability = lower_probability;
  return csm::generate(cfg);
}

// Dense, nearly balanced instances without lower bounds; these often have
// several stable matchings.
inline csm::RawInstance packing_instance(std::uint64_t seed) {
  csm::GenConfig cfg;
  cfg.seed = seed;
  const int n = 3 + static_cast<int>(seed % 3);
  cfg.institutes = n + 1;
  cfg.applicants = n + 2;
  cfg.density = 1.0;
  cfg.max_depth = 2;
  cfg.min_capacity = 1;
  cfg.max_capacity = 1 + static_cast<int>(seed % 2);
  return csm::generate(cfg);
}

// Many-to-many side.
struct M2M {
  std::vector<int> iquota, aquota;
  std::vector<std::vector<int>> ipref, apref;  // indices into the other side
};

inline M2M to_indices(const csm::ManyToManyInstance& in) {
  M2M out;
  std::map<std::string, int> iid, aid;
  for (size_t k = 0; k < in.institutes.size(); ++k) iid[in.institutes[k].id] = static_cast<int>(k);
  for (size_t k = 0; k < in.applicants.size(); ++k) aid[in.applicants[k].id] = static_cast<int>(k);
  for (const auto& e : in.institutes) {
    out.iquota.push_back(e.quota);
    out.ipref.emplace_back();
    for (const auto& p : e.preferences) out.ipref.back().push_back(aid.at(p));
  }
  for (const auto& e : in.applicants) {
    out.aquota.push_back(e.quota);
    out.apref.emplace_back();
    for (const auto& p : e.preferences) out.apref.back().push_back(iid.at(p));
  }
  return out;
}

// Stable many-to-many matchings as per-applicant sorted institute lists.
// A pair (i, a) outside the matching blocks when each side has a free slot
// or prefers the other to one of its current partners.
inline std::set<std::vector<std::vector<int>>> m2m_stable(const M2M& in) {
  const int ni = static_cast<int>(in.iquota.size()), na = static_cast<int>(in.aquota.size());
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < na; ++a)
    for (int i : in.apref[a]) pairs.emplace_back(i, a);
  std::set<std::vector<std::vector<int>>> out;
  auto pos = [](const std::vector<int>& list, int x) {
    return static_cast<int>(std::find(list.begin(), list.end(), x) - list.begin());
  };
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<std::vector<int>> of_i(ni), of_a(na);
    for (size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1) {
        of_i[pairs[p].first].push_back(pairs[p].second);
        of_a[pairs[p].second].push_back(pairs[p].first);
      }
    bool ok = true;
    for (int i = 0; i < ni && ok; ++i) ok = static_cast<int>(of_i[i].size()) <= in.iquota[i];
    for (int a = 0; a < na && ok; ++a) ok = static_cast<int>(of_a[a].size()) <= in.aquota[a];
    if (!ok) continue;
    for (size_t p = 0; p < pairs.size() && ok; ++p) {
      if (mask >> p & 1) continue;
      auto [i, a] = pairs[p];
      if (pos(in.ipref[i], a) == static_cast<int>(in.ipref[i].size())) continue;
      bool i_wants = static_cast<int>(of_i[i].size()) < in.iquota[i] ||
                     std::any_of(of_i[i].begin(), of_i[i].end(),
                                 [&](int b) { return pos(in.ipref[i], a) < pos(in.ipref[i], b); });
      bool a_wants = static_cast<int>(of_a[a].size()) < in.aquota[a] ||
                     std::any_of(of_a[a].begin(), of_a[a].end(),
                                 [&](int j) { return pos(in.apref[a], i) < pos(in.apref[a], j); });
      if (i_wants && a_wants) ok = false;
    }
    if (!ok) continue;
    for (auto& v : of_a) std::sort(v.begin(), v.end());
    out.insert(of_a);
  }
  return out;
}

}  // namespace oracle

#endif  // CSM_TESTS_ORACLES_HPP_

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

#include "csm/packing.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace csm {

namespace {

// True when adding `rank` to the tuple with node counts `count` keeps every
// upper bound on its path.
bool fits(const ClassForest& f, const std::vector<int>& count, int rank) {
  for (int v = f.leaf_at(rank); v >= 0; v = f.node(v).parent)
    if (count[v] >= f.node(v).upper) return false;
  return true;
}

void add(const ClassForest& f, std::vector<int>& count, int rank, int delta) {
  for (int v = f.leaf_at(rank); v >= 0; v = f.node(v).parent) count[v] += delta;
}

}  // namespace

HE compute_h_e(const Instance& instance, const ClassForest& f, const FractionalMatching& x) {
  const int i = f.institute();
  const auto& prefs = instance.institute(i).preferences;
  HE out;
  std::vector<int> count(f.size(), 0);
  for (int r = 0; r < static_cast<int>(prefs.size()); ++r) {
    const int a = prefs[r];
    if (x[instance.pair_offset(i) + r] <= 0) continue;
    if (fits(f, count, r)) {
      add(f, count, r, 1);
      out.h.push_back(a);
    }
    if (open_tooth_value(instance, x, i, a) == 0) out.e.push_back(a);
  }
  return out;
}

BinState pack(const Instance& instance, const FractionalMatching& x, PackOptions options) {
  auto forests = preprocess(instance);
  const int n = instance.num_institutes();
  BinState state;
  state.institutes.resize(n);
  std::vector<std::vector<int>> remaining(n);  // list positions, best first
  std::vector<std::set<int>> packed(instance.num_applicants());

  auto value = [&](int i, int a) { return x[instance.pair_index(i, a)]; };
  auto name = [&](int i) { return "institute '" + instance.institute(i).id + "'"; };

  for (int i = 0; i < n; ++i) {
    const ClassForest& f = forests[i];
    InstituteBins& ib = state.institutes[i];
    ib.he = compute_h_e(instance, f, x);
    if (ib.he.h.size() != ib.he.e.size())
      throw HNotEqualE(name(i) + ": |H| = " + std::to_string(ib.he.h.size()) + " but |E| = " +
                       std::to_string(ib.he.e.size()));
    ib.bins.resize(ib.he.e.size());
    for (size_t j = 0; j < ib.he.h.size(); ++j) {
      int a = ib.he.h[j];
      ib.bins[j].items.push_back({a, value(i, a), Rational(0)});
      ib.bins[j].fill = value(i, a);
      packed[a].insert(i);
    }
    std::set<int> in_h(ib.he.h.begin(), ib.he.h.end());
    const auto& prefs = instance.institute(i).preferences;
    for (int r = 0; r < static_cast<int>(prefs.size()); ++r)
      if (x[instance.pair_offset(i) + r] > 0 && !in_h.count(prefs[r])) remaining[i].push_back(r);
  }

  auto check_bin = [&](int i, int j) {
    const Bin& bin = state.institutes[i].bins[j];
    if (bin.fill > 1) throw PackingError(name(i) + " bin " + std::to_string(j + 1) + " overfilled");
    Rational lhs = bin.fill + open_tooth_value(instance, x, i, bin.top());
    if (lhs != 1)
      throw PackingError(name(i) + " bin " + std::to_string(j + 1) +
                         ": content plus open tooth of the top item is " + to_string(lhs));
  };
  auto check_tops = [&](int i) {
    const ClassForest& f = forests[i];
    std::vector<int> count(f.size(), 0);
    for (const Bin& bin : state.institutes[i].bins) add(f, count, instance.institute_rank(i, bin.top()), 1);
    for (int v = 0; v < f.size(); ++v)
      if (count[v] > f.node(v).upper) throw PackingError(name(i) + ": bin tops break a class quota");
  };
  auto check_unpacked = [&](int i, int a) {
    for (int j : instance.applicant(a).preferences) {
      if (value(j, a) > 0 && !packed[a].count(j) && !instance.applicant_prefers(a, j, i))
        throw PackingError("applicant '" + instance.applicant(a).id + "' packed at " + name(i) +
                           " ahead of a preferred unpacked item");
    }
  };
  auto check_phase = [&]() {
    std::set<int> tops;
    for (const auto& ib : state.institutes)
      for (const Bin& bin : ib.bins)
        if (!tops.insert(bin.top()).second)
          throw PackingError("applicant '" + instance.applicant(bin.top()).id +
                             "' tops two bins at a phase end");
    for (int a = 0; a < instance.num_applicants(); ++a)
      if (!packed[a].empty() && !tops.count(a))
        throw PackingError("applicant '" + instance.applicant(a).id + "' tops no bin");
  };

  if (options.check) {
    for (int i = 0; i < n; ++i) {
      for (size_t j = 0; j < state.institutes[i].bins.size(); ++j) check_bin(i, j);
      check_tops(i);
    }
    check_phase();
  }

  size_t total_items = 0;
  for (const auto& r : remaining) total_items += r.size();
  for (size_t guard = 0;; ++guard) {
    if (guard > total_items + 1) throw PackingError("packing does not terminate");
    Rational gap = 0;
    for (const auto& ib : state.institutes)
      for (const Bin& bin : ib.bins) gap = std::max(gap, Rational(1 - bin.fill));
    if (gap == 0) break;
    ++state.phases;
    std::vector<std::pair<int, int>> widest;
    for (int i = 0; i < n; ++i)
      for (size_t j = 0; j < state.institutes[i].bins.size(); ++j)
        if (1 - state.institutes[i].bins[j].fill == gap) widest.emplace_back(i, j);

    for (auto [i, j] : widest) {
      const ClassForest& f = forests[i];
      InstituteBins& ib = state.institutes[i];
      std::vector<int> count(f.size(), 0);
      for (size_t k = 0; k < ib.bins.size(); ++k)
        if (k != static_cast<size_t>(j)) add(f, count, instance.institute_rank(i, ib.bins[k].top()), 1);
      auto it = std::find_if(remaining[i].begin(), remaining[i].end(),
                             [&](int r) { return fits(f, count, r); });
      if (it == remaining[i].end())
        throw InvariantCUnsatisfiable(name(i) + ": no remaining item fits bin " +
                                      std::to_string(j + 1));
      const int a = instance.institute(i).preferences[*it];
      remaining[i].erase(it);
      Bin& bin = ib.bins[j];
      bin.items.push_back({a, value(i, a), bin.fill});
      bin.fill += value(i, a);
      packed[a].insert(i);
      if (options.check) {
        check_bin(i, j);
        check_tops(i);
        check_unpacked(i, a);
      }
    }
    if (options.check) check_phase();
  }
  for (int i = 0; i < n; ++i)
    if (!remaining[i].empty())
      throw PackingError(name(i) + ": items left over after all bins filled");
  return state;
}

Matching cut(const Instance& instance, const BinState& state, const Rational& alpha) {
  Matching m = empty_matching(instance);
  for (int i = 0; i < static_cast<int>(state.institutes.size()); ++i)
    for (const Bin& bin : state.institutes[i].bins)
      for (const Item& item : bin.items)
        if (item.offset <= alpha && alpha < item.offset + item.height) m[item.applicant] = i;
  return m;
}

std::vector<Rational> breakpoints(const BinState& state) {
  std::vector<Rational> out{Rational(1)};
  for (const auto& ib : state.institutes)
    for (const Bin& bin : ib.bins)
      for (const Item& item : bin.items) out.push_back(item.offset);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<Matching, Rational>> decompose(const Instance& instance,
                                                     const FractionalMatching& x) {
  BinState state = pack(instance, x);
  auto points = breakpoints(state);
  std::vector<std::pair<Matching, Rational>> out;
  if (points.size() == 1) return {{empty_matching(instance), Rational(1)}};
  for (size_t k = 0; k + 1 < points.size(); ++k) {
    Matching m = cut(instance, state, points[k]);
    Rational weight = points[k + 1] - points[k];
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == m; });
    if (it == out.end())
      out.emplace_back(m, weight);
    else
      it->second += weight;
  }
  return out;
}

FractionalMatching average(const Instance& instance, const std::vector<Matching>& matchings) {
  FractionalMatching x = zero_point(instance);
  if (matchings.empty()) return x;
  const Rational share(1, static_cast<long>(matchings.size()));
  for (const auto& m : matchings)
    for (int a = 0; a < static_cast<int>(m.size()); ++a)
      if (m[a] >= 0) x[instance.pair_index(m[a], a)] += share;
  return x;
}

Matching median(const Instance& instance, const std::vector<Matching>& matchings) {
  if (matchings.empty()) throw std::invalid_argument("median of no matchings");
  const int k = static_cast<int>(matchings.size());
  Matching direct = empty_matching(instance);
  for (int a = 0; a < instance.num_applicants(); ++a) {
    std::vector<int> got;
    for (const auto& m : matchings)
      if (m[a] >= 0) got.push_back(m[a]);
    if (got.empty()) continue;
    if (static_cast<int>(got.size()) != k)
      throw std::invalid_argument("applicant '" + instance.applicant(a).id +
                                  "' is matched in some inputs but not all");
    std::sort(got.begin(), got.end(),
              [&](int i, int j) { return instance.applicant_rank(a, i) < instance.applicant_rank(a, j); });
    direct[a] = got[(k + 1) / 2 - 1];
  }
  BinState state = pack(instance, average(instance, matchings));
  Matching packed = cut(instance, state, Rational(1, 2));
  if (packed != direct)
    throw MedianMismatch("median choice " + format_matching(instance, direct) +
                         " differs from the cut at 1/2 " + format_matching(instance, packed));
  return direct;
}

}  // namespace csm

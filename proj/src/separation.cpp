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

#include "csm/separation.hpp"

#include <algorithm>
#include <limits>

namespace csm {

SeparationTable::SeparationTable(const Instance& instance, const ClassForest& forest,
                                 const FractionalMatching& x, bool with_shaft)
    : instance_(instance), forest_(forest), with_shaft_(with_shaft) {
  const int i = forest.institute();
  const auto& prefs = instance.institute(i).preferences;
  for (int r = 0; r < static_cast<int>(prefs.size()); ++r) {
    w_.push_back(open_tooth_value(instance, x, i, prefs[r]));
    x_.push_back(with_shaft ? x[instance.pair_offset(i) + r] : Rational(0));
  }
  z_.resize(forest.size());
  y_.resize(forest.size());
  for (int node : forest.bottom_up()) build(node);
}

int SeparationTable::count_above(int node, int rank) const {
  const auto& m = forest_.member_ranks(node);
  return static_cast<int>(std::lower_bound(m.begin(), m.end(), rank) - m.begin());
}

const SeparationTable::Row& SeparationTable::y_row(int node, int rank) const {
  return y_[node][count_above(node, rank)];
}

SeparationTable::Row SeparationTable::combine(int node, int rank_cut, int special_child,
                                              int special_rank) const {
  const ClassNode& n = forest_.node(node);
  const int limit = std::min<int>(n.upper, forest_.member_ranks(node).size());
  Row acc(1);
  acc[0].finite = true;
  acc[0].value = 0;
  for (int c : n.children) {
    const Row& row = c == special_child ? y_row(c, special_rank)
                                        : z_row(c, count_above(c, rank_cut));
    Row next(std::min<int>(limit, acc.size() - 1 + row.size() - 1) + 1);
    for (size_t s = 0; s < acc.size(); ++s) {
      if (!acc[s].finite) continue;
      for (size_t t = 0; t < row.size() && s + t < next.size(); ++t) {
        if (!row[t].finite) continue;
        Rational v = acc[s].value + row[t].value;
        Entry& e = next[s + t];
        if (!e.finite || v < e.value) {
          e.finite = true;
          e.value = v;
          e.ranks = acc[s].ranks;
          e.ranks.insert(e.ranks.end(), row[t].ranks.begin(), row[t].ranks.end());
        }
      }
    }
    acc = std::move(next);
  }
  acc.resize(limit + 1);
  for (auto& e : acc) std::sort(e.ranks.begin(), e.ranks.end());
  return acc;
}

void SeparationTable::build(int node) {
  const ClassNode& n = forest_.node(node);
  const auto& members = forest_.member_ranks(node);
  const int size = static_cast<int>(members.size());

  if (n.kind == NodeKind::kLeaf) {
    const int r = members.front();
    Row none(2), some(2), with(2);
    none[0] = {true, Rational(0), {}};
    some[0] = {true, x_[r], {}};
    some[1] = {true, w_[r] + x_[r], {r}};
    with[1] = some[1];
    z_[node] = {none, some};
    y_[node] = {with};
    return;
  }

  y_[node].clear();
  for (int p : members) {
    int special = -1;
    for (int c : n.children)
      if (forest_.contains_rank(c, p)) special = c;
    y_[node].push_back(combine(node, p, special, p));
  }
  z_[node].clear();
  const int limit = std::min(n.upper, size);
  for (int k = 0; k <= size; ++k) {
    const int cut = k == size ? std::numeric_limits<int>::max() : members[k];
    Row row = combine(node, cut, -1, -1);
    if (n.upper <= size) {
      Entry best;
      for (int idx = 0; idx < k; ++idx) {
        const Entry& e = y_[node][idx][limit];
        if (e.finite && (!best.finite || e.value < best.value)) best = e;
      }
      row[limit] = best;
    }
    z_[node].push_back(std::move(row));
  }
}

std::optional<Rational> SeparationTable::z(int node, int s, int k) const {
  const Row& row = z_[node][k];
  if (s < 0 || s >= static_cast<int>(row.size()) || !row[s].finite) return std::nullopt;
  return row[s].value;
}

std::optional<Rational> SeparationTable::y(int node, int s, int rank) const {
  const Row& row = y_row(node, rank);
  if (s < 0 || s >= static_cast<int>(row.size()) || !row[s].finite) return std::nullopt;
  return row[s].value;
}

std::vector<int> SeparationTable::z_tuple(int node, int s, int k) const {
  std::vector<int> out;
  for (int r : z_[node][k][s].ranks)
    out.push_back(instance_.institute(forest_.institute()).preferences[r]);
  return out;
}

std::vector<int> SeparationTable::y_tuple(int node, int s, int rank) const {
  std::vector<int> out;
  for (int r : y_row(node, rank)[s].ranks)
    out.push_back(instance_.institute(forest_.institute()).preferences[r]);
  return out;
}

std::vector<Violation> separate_all(const Instance& instance, const FractionalMatching& x) {
  std::vector<Violation> out;
  auto forests = preprocess(instance);
  for (int i = 0; i < instance.num_institutes(); ++i) {
    const ClassForest& f = forests[i];
    const int offset = instance.pair_offset(i);
    const int n = static_cast<int>(f.member_ranks(f.root()).size());

    SeparationTable combs(instance, f, x, true);
    std::optional<Violation> worst;
    for (int s = 1; s <= std::min(n, f.node(f.root()).upper); ++s) {
      auto value = combs.z(f.root(), s, n);
      if (!value || *value >= s) continue;
      Rational slack = Rational(s) - *value;
      if (!worst || slack > worst->slack) {
        Violation v;
        v.kind = ConstraintKind::kComb;
        v.institute = i;
        v.tuple = combs.z_tuple(f.root(), s, n);
        v.lhs = *value;
        v.rhs = s;
        v.slack = slack;
        worst = v;
      }
    }
    if (worst) out.push_back(*worst);

    SeparationTable tuples(instance, f, x, false);
    for (int node = 0; node < f.size(); ++node) {
      const auto& members = f.member_ranks(node);
      const int q = f.node(node).upper;
      if (q > static_cast<int>(members.size())) continue;
      std::optional<Violation> best;
      Rational below = 0;
      // Walk members from the bottom so the suffix sum is at hand.
      for (int idx = static_cast<int>(members.size()) - 1; idx >= 0; --idx) {
        const int p = members[idx];
        auto value = tuples.y(node, q, p);
        if (value && *value < below) {
          Rational slack = below - *value;
          if (!best || slack >= best->slack) {
            Violation v;
            v.kind = ConstraintKind::kClassTuple;
            v.institute = i;
            v.node = node;
            v.tuple = tuples.y_tuple(node, q, p);
            v.lhs = *value;
            v.rhs = below;
            v.slack = slack;
            best = v;
          }
        }
        below += x[offset + p];
      }
      if (best) out.push_back(*best);
    }
  }
  return out;
}

std::optional<Violation> separate(const Instance& instance, const FractionalMatching& x) {
  auto all = separate_all(instance, x);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace csm

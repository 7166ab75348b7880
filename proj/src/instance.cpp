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

#include "csm/instance.hpp"

#include <algorithm>
#include <unordered_set>

namespace csm {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string out = "invalid instance:";
  for (const auto& v : violations) {
    out += "\n  ";
    out += v;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

int Instance::institute_rank(int i, int a) const {
  const auto& ranks = institute_rank_[i];
  auto it = ranks.find(a);
  return it == ranks.end() ? -1 : it->second;
}

int Instance::applicant_rank(int a, int i) const {
  const auto& ranks = applicant_rank_[a];
  auto it = ranks.find(i);
  return it == ranks.end() ? -1 : it->second;
}

bool Instance::applicant_prefers(int a, int i, int j) const {
  if (i < 0) return false;
  if (j < 0) return applicant_rank(a, i) >= 0;
  return applicant_rank(a, i) < applicant_rank(a, j);
}

int Instance::pair_index(int i, int a) const {
  int r = institute_rank(i, a);
  return r < 0 ? -1 : pair_offset_[i] + r;
}

std::optional<int> Instance::find_institute(const Id& id) const {
  auto it = institute_by_id_.find(id);
  if (it == institute_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Instance::find_applicant(const Id& id) const {
  auto it = applicant_by_id_.find(id);
  if (it == applicant_by_id_.end()) return std::nullopt;
  return it->second;
}

bool Instance::has_lower_bounds() const {
  for (const auto& inst : institutes_)
    for (const auto& c : inst.classes)
      if (c.lower > 0) return true;
  return false;
}

long Instance::total_list_length() const {
  long m = 0;
  for (const auto& inst : institutes_) m += static_cast<long>(inst.preferences.size());
  for (const auto& app : applicants_) m += static_cast<long>(app.preferences.size());
  return m;
}

void Instance::build_indexes() {
  institute_rank_.assign(institutes_.size(), {});
  applicant_rank_.assign(applicants_.size(), {});
  pair_offset_.assign(institutes_.size(), 0);
  pairs_.clear();
  for (int i = 0; i < num_institutes(); ++i) {
    pair_offset_[i] = static_cast<int>(pairs_.size());
    const auto& prefs = institutes_[i].preferences;
    institute_rank_[i].reserve(prefs.size());
    for (int r = 0; r < static_cast<int>(prefs.size()); ++r) {
      institute_rank_[i].emplace(prefs[r], r);
      pairs_.push_back({i, prefs[r]});
    }
  }
  for (int a = 0; a < num_applicants(); ++a) {
    const auto& prefs = applicants_[a].preferences;
    applicant_rank_[a].reserve(prefs.size());
    for (int r = 0; r < static_cast<int>(prefs.size()); ++r)
      applicant_rank_[a].emplace(prefs[r], r);
  }
}

Instance validate(const RawInstance& raw) {
  std::vector<std::string> violations;
  Instance out;

  for (int i = 0; i < static_cast<int>(raw.institutes.size()); ++i) {
    const Id& id = raw.institutes[i].id;
    if (!out.institute_by_id_.emplace(id, i).second)
      violations.push_back("duplicate institute id '" + id + "'");
  }
  for (int a = 0; a < static_cast<int>(raw.applicants.size()); ++a) {
    const Id& id = raw.applicants[a].id;
    if (!out.applicant_by_id_.emplace(id, a).second)
      violations.push_back("duplicate applicant id '" + id + "'");
    if (out.institute_by_id_.count(id))
      violations.push_back("id '" + id + "' names both an institute and an applicant");
  }

  for (const auto& ri : raw.institutes) {
    Institute inst;
    inst.id = ri.id;
    inst.capacity = ri.capacity;
    if (ri.capacity < 1)
      violations.push_back("institute '" + ri.id + "': capacity " + std::to_string(ri.capacity) +
                           " < 1");
    std::unordered_set<Id> seen;
    for (const auto& aid : ri.preferences) {
      if (!seen.insert(aid).second) {
        violations.push_back("institute '" + ri.id + "': applicant '" + aid +
                             "' listed twice");
        continue;
      }
      auto a = out.applicant_by_id_.find(aid);
      if (a == out.applicant_by_id_.end()) {
        violations.push_back("institute '" + ri.id + "': dangling applicant id '" + aid + "'");
        continue;
      }
      inst.preferences.push_back(a->second);
    }
    out.institutes_.push_back(std::move(inst));
  }

  for (const auto& ra : raw.applicants) {
    Applicant app;
    app.id = ra.id;
    std::unordered_set<Id> seen;
    for (const auto& iid : ra.preferences) {
      if (!seen.insert(iid).second) {
        violations.push_back("applicant '" + ra.id + "': institute '" + iid + "' listed twice");
        continue;
      }
      auto i = out.institute_by_id_.find(iid);
      if (i == out.institute_by_id_.end()) {
        violations.push_back("applicant '" + ra.id + "': dangling institute id '" + iid + "'");
        continue;
      }
      app.preferences.push_back(i->second);
    }
    out.applicants_.push_back(std::move(app));
  }

  out.build_indexes();

  // Acceptability must be mutual.
  for (int i = 0; i < out.num_institutes(); ++i)
    for (int a : out.institutes_[i].preferences)
      if (out.applicant_rank(a, i) < 0)
        violations.push_back("non-mutual pair: institute '" + out.institutes_[i].id +
                             "' lists applicant '" + out.applicants_[a].id +
                             "' but not conversely");
  for (int a = 0; a < out.num_applicants(); ++a)
    for (int i : out.applicants_[a].preferences)
      if (out.institute_rank(i, a) < 0)
        violations.push_back("non-mutual pair: applicant '" + out.applicants_[a].id +
                             "' lists institute '" + out.institutes_[i].id +
                             "' but not conversely");

  for (int i = 0; i < static_cast<int>(raw.institutes.size()); ++i) {
    const auto& ri = raw.institutes[i];
    auto& inst = out.institutes_[i];
    for (int c = 0; c < static_cast<int>(ri.classes.size()); ++c) {
      const auto& rc = ri.classes[c];
      const std::string where =
          "institute '" + ri.id + "' class #" + std::to_string(c + 1) + ": ";
      ClassSpec spec;
      spec.upper = rc.upper;
      spec.lower = rc.lower;
      if (rc.upper < 1)
        violations.push_back(where + "upper bound " + std::to_string(rc.upper) + " < 1");
      if (rc.lower < 0)
        violations.push_back(where + "lower bound " + std::to_string(rc.lower) + " < 0");
      if (rc.lower > rc.upper)
        violations.push_back(where + "lower bound " + std::to_string(rc.lower) +
                             " > upper bound " + std::to_string(rc.upper));
      if (rc.members.empty()) violations.push_back(where + "empty class");
      std::unordered_set<Id> seen;
      for (const auto& aid : rc.members) {
        if (!seen.insert(aid).second) {
          violations.push_back(where + "member '" + aid + "' listed twice");
          continue;
        }
        auto a = out.applicant_by_id_.find(aid);
        int r = a == out.applicant_by_id_.end() ? -1 : out.institute_rank(i, a->second);
        if (r < 0) {
          violations.push_back(where + "member '" + aid + "' is not on the preference list");
          continue;
        }
        spec.members.push_back(a->second);
      }
      std::sort(spec.members.begin(), spec.members.end(), [&](int x, int y) {
        return out.institute_rank(i, x) < out.institute_rank(i, y);
      });
      inst.classes.push_back(std::move(spec));
    }
  }

  if (!violations.empty()) throw ValidationError(std::move(violations));
  return out;
}

RawInstance to_raw(const Instance& instance) {
  RawInstance raw;
  for (const auto& inst : instance.institutes()) {
    RawInstitute ri;
    ri.id = inst.id;
    ri.capacity = inst.capacity;
    for (int a : inst.preferences) ri.preferences.push_back(instance.applicant(a).id);
    for (const auto& c : inst.classes) {
      RawClass rc;
      rc.upper = c.upper;
      rc.lower = c.lower;
      for (int a : c.members) rc.members.push_back(instance.applicant(a).id);
      ri.classes.push_back(std::move(rc));
    }
    raw.institutes.push_back(std::move(ri));
  }
  for (const auto& app : instance.applicants()) {
    RawApplicant ra;
    ra.id = app.id;
    for (int i : app.preferences) ra.preferences.push_back(instance.institute(i).id);
    raw.applicants.push_back(std::move(ra));
  }
  return raw;
}

}  // namespace csm

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

#ifndef CSM_INSTANCE_HPP_
#define CSM_INSTANCE_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace csm {

using Id = std::string;

// Unchecked instance as read from a file: everything refers to ids.

struct RawClass {
  std::vector<Id> members;
  int upper = 1;
  int lower = 0;
};

struct RawInstitute {
  Id id;
  int capacity = 1;
  std::vector<Id> preferences;
  std::vector<RawClass> classes;
};

struct RawApplicant {
  Id id;
  std::vector<Id> preferences;
};

struct RawInstance {
  std::vector<RawInstitute> institutes;
  std::vector<RawApplicant> applicants;
};

// Checked instance. Entities are addressed by their input position.

struct ClassSpec {
  std::vector<int> members;  // applicant indices, best-ranked first
  int upper = 1;
  int lower = 0;
};

struct Institute {
  Id id;
  int capacity = 1;
  std::vector<int> preferences;  // applicant indices, best first
  std::vector<ClassSpec> classes;
};

struct Applicant {
  Id id;
  std::vector<int> preferences;  // institute indices, best first
};

// An acceptable institute-applicant pair.
struct Pair {
  int institute;
  int applicant;
  friend bool operator==(const Pair&, const Pair&) = default;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class Instance {
 public:
  Instance() = default;

  int num_institutes() const { return static_cast<int>(institutes_.size()); }
  int num_applicants() const { return static_cast<int>(applicants_.size()); }
  const std::vector<Institute>& institutes() const { return institutes_; }
  const std::vector<Applicant>& applicants() const { return applicants_; }
  const Institute& institute(int i) const { return institutes_[i]; }
  const Applicant& applicant(int a) const { return applicants_[a]; }

  // Position of a on L^i, or -1 when the pair is not acceptable.
  int institute_rank(int i, int a) const;
  // Position of i on a's list, or -1.
  int applicant_rank(int a, int i) const;
  bool acceptable(int i, int a) const { return institute_rank(i, a) >= 0; }
  // True when i ranks a strictly above b.
  bool institute_prefers(int i, int a, int b) const {
    return institute_rank(i, a) < institute_rank(i, b);
  }
  // True when a strictly prefers i to j; j == -1 stands for unmatched.
  bool applicant_prefers(int a, int i, int j) const;

  // Acceptable pairs are numbered institute by institute, in list order.
  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  const std::vector<Pair>& pairs() const { return pairs_; }
  int pair_index(int i, int a) const;
  int pair_offset(int i) const { return pair_offset_[i]; }

  std::optional<int> find_institute(const Id& id) const;
  std::optional<int> find_applicant(const Id& id) const;

  bool has_lower_bounds() const;
  // Total preference-list length, counting both sides.
  long total_list_length() const;

  friend Instance validate(const RawInstance& raw);

 private:
  void build_indexes();

  std::vector<Institute> institutes_;
  std::vector<Applicant> applicants_;
  std::vector<Pair> pairs_;
  std::vector<int> pair_offset_;
  std::vector<std::unordered_map<int, int>> institute_rank_;
  std::vector<std::unordered_map<int, int>> applicant_rank_;
  std::unordered_map<Id, int> institute_by_id_;
  std::unordered_map<Id, int> applicant_by_id_;
};

// Checks a raw instance, collecting every violation before throwing.
Instance validate(const RawInstance& raw);

RawInstance to_raw(const Instance& instance);

}  // namespace csm

#endif  // CSM_INSTANCE_HPP_

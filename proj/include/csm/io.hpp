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

#ifndef CSM_IO_HPP_
#define CSM_IO_HPP_

#include <stdexcept>
#include <string>

#include "csm/instance.hpp"
#include "csm/many_to_many.hpp"
#include "csm/matching.hpp"
#include "csm/polytope.hpp"

namespace csm {

// Syntax and schema problems in an input document. The message carries the
// line or the field path.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

RawInstance parse_instance(const std::string& text);
// Canonical text: fixed key order, two-space indent, trailing newline.
std::string serialize_instance(const RawInstance& raw);
// Parses and validates.
Instance load_instance(const std::string& path);

// [{"institute", "applicant", "value"}]; values are "p/q" or decimal strings
// or JSON integers. Unlisted pairs are zero.
FractionalMatching parse_point(const std::string& text, const Instance& instance);
std::string serialize_point(const Instance& instance, const FractionalMatching& x);

// {"applicant": "institute"}; unlisted applicants are unmatched.
Matching parse_matching(const std::string& text, const Instance& instance);
std::string serialize_matching(const Instance& instance, const Matching& matching);

// {"institutes": [{"id", "quota", "preferences"}], "applicants": [...]}
ManyToManyInstance parse_m2m(const std::string& text);

}  // namespace csm

#endif  // CSM_IO_HPP_

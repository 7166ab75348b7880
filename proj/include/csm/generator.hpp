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

#ifndef CSM_GENERATOR_HPP_
#define CSM_GENERATOR_HPP_

#include <cstdint>

#include "csm/instance.hpp"

namespace csm {

struct GenConfig {
  std::uint64_t seed = 1;
  int institutes = 3;
  int applicants = 6;
  double density = 0.6;  // probability that a pair is acceptable
  int max_depth = 2;     // nesting depth of declared classes
  int min_capacity = 1;
  int max_capacity = 3;
  double class_probability = 0.7;  // chance that a part becomes a class
  double lower_probability = 0.0;  // chance that a class gets a lower bound
  bool non_laminar = false;        // add one crossing pair of classes
};

// Deterministic for a given config. Lower bounds are drawn so that lifted
// bounds never exceed the uppers and the capacity covers the top level.
RawInstance generate(const GenConfig& config);

}  // namespace csm

#endif  // CSM_GENERATOR_HPP_

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

#include "csm/generator.hpp"

#include <algorithm>
#include <random>

namespace csm {

namespace {

class Builder {
 public:
  Builder(const GenConfig& config, std::mt19937_64& rng) : config_(config), rng_(rng) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

  // Splits `members` into parts and declares classes for some of them.
  // Returns the sum of lifted lower bounds of the declared top-level parts.
  int partition(const std::vector<Id>& members, int depth, std::vector<RawClass>& out) {
    if (depth >= config_.max_depth || members.size() < 2) return 0;
    int parts = uniform(2, std::min<int>(3, static_cast<int>(members.size())));
    std::vector<std::vector<Id>> split(parts);
    std::vector<Id> shuffled = members;
    std::shuffle(shuffled.begin(), shuffled.end(), rng_);
    for (size_t k = 0; k < shuffled.size(); ++k)
      split[k < static_cast<size_t>(parts) ? k : uniform(0, parts - 1)].push_back(shuffled[k]);
    int total = 0;
    for (auto& part : split) {
      if (part.size() == members.size() || !coin(config_.class_probability)) continue;
      int childsum = partition(part, depth + 1, out);
      RawClass rc;
      rc.members = part;
      rc.upper = uniform(std::max(1, childsum), static_cast<int>(part.size()));
      if (coin(config_.lower_probability)) rc.lower = uniform(childsum, rc.upper);
      total += std::max(rc.lower, childsum);
      out.push_back(std::move(rc));
    }
    return total;
  }

 private:
  const GenConfig& config_;
  std::mt19937_64& rng_;
};

}  // namespace

RawInstance generate(const GenConfig& config) {
  std::mt19937_64 rng(config.seed);
  Builder b(config, rng);
  RawInstance raw;
  for (int i = 0; i < config.institutes; ++i) raw.institutes.push_back({"i" + std::to_string(i + 1), 1, {}, {}});
  for (int a = 0; a < config.applicants; ++a) raw.applicants.push_back({"a" + std::to_string(a + 1), {}});

  for (int i = 0; i < config.institutes; ++i) {
    for (int a = 0; a < config.applicants; ++a) {
      if (!b.coin(config.density)) continue;
      raw.institutes[i].preferences.push_back(raw.applicants[a].id);
      raw.applicants[a].preferences.push_back(raw.institutes[i].id);
    }
  }
  for (auto& ra : raw.applicants) std::shuffle(ra.preferences.begin(), ra.preferences.end(), rng);
  for (auto& ri : raw.institutes) {
    std::shuffle(ri.preferences.begin(), ri.preferences.end(), rng);
    int lowers = b.partition(ri.preferences, 0, ri.classes);
    ri.capacity = std::max(lowers, b.uniform(config.min_capacity, config.max_capacity));
  }

  if (config.non_laminar) {
    for (auto& ri : raw.institutes) {
      if (ri.preferences.size() < 3) continue;
      const auto& p = ri.preferences;
      RawClass first, second;
      first.members = {p[0], p[1]};
      second.members = {p[1], p[2]};
      ri.classes.push_back(first);
      ri.classes.push_back(second);
      break;
    }
  }
  return raw;
}

}  // namespace csm

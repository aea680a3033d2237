// Copyright 2026 The vcauction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Random scenario generation and the named experiment presets.

#ifndef VCAUCTION_SCENARIO_HPP_
#define VCAUCTION_SCENARIO_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vcauction/model.hpp"

namespace vcauction {

struct JobTypeSpec {
  int type_id = 1;
  int component_count = 0;
  std::vector<std::pair<int, int>> edges;

  bool operator==(const JobTypeSpec&) const = default;
};

// Triangle, 3-leaf star, 4-cycle with a pendant, two triangles sharing an
// edge with two pendants.
std::vector<JobTypeSpec> default_job_types();

// Empty string when the spec is a connected simple graph.
std::string check_job_type(const JobTypeSpec& spec);

struct Range {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Range&) const = default;
};

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool operator==(const IntRange&) const = default;
};

struct GenConfig {
  Range epsilon{0.9, 0.95};
  Range alpha{1.0, 1.5};
  Range base_time{0.2, 0.3};
  Range tolerable_time{0.6, 0.7};
  Range edge_weight{0.1, 0.7};
  Range contact_rate{0.05, 0.06};
  Range beta1{0.7, 0.9};
  Range beta2{0.9, 1.0};
  double price_scale = 0.25;
  std::vector<int> job_types{1, 2};  // multiset of type ids, one job each
  std::vector<JobTypeSpec> type_library = default_job_types();
  int sp_count = 3;
  IntRange vms_per_sp{3, 4};
  // Probability that an SP is in a job's coverage set. Every job keeps at
  // least one SP.
  double coverage_density = 1.0;
  std::uint64_t seed = 1;

  bool operator==(const GenConfig&) const = default;
};

// Every reason the config cannot be used; empty when it is valid.
std::vector<std::string> check_config(const GenConfig& cfg);

// Deterministic in cfg. Each SP, SP pair and (job, SP) coverage cell draws
// from its own stream, so raising sp_count keeps the existing SPs intact.
// Throws AuctionError for invalid configs, including ranges that yield a
// non-positive valuation.
Scenario generate(const GenConfig& cfg);

// "small", "large", "bench", plus the test-only "tiny" (at most 4 buyers and
// 8 sellers) and "stress" (contact rates high enough for structure
// preservation to bind, sparse coverage). Throws AuctionError otherwise.
GenConfig preset(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace vcauction

#endif  // VCAUCTION_SCENARIO_HPP_

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


// Comparison mechanisms: a random buyer is matched to one admissible seller
// at a time, without backtracking. ETPM takes the fastest seller, LPM the
// cheapest, RMM a uniformly random one. A dead end restarts the whole pass
// with a fresh buyer order.

#ifndef VCAUCTION_BASELINES_HPP_
#define VCAUCTION_BASELINES_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "vcauction/model.hpp"

namespace vcauction {

enum class BaselineKind { kEtpm, kLpm, kRmm };

const char* to_string(BaselineKind kind);
// Accepts "etpm", "lpm", "rmm" in any case.
std::optional<BaselineKind> parse_baseline(const std::string& name);

struct BaselineOutcome {
  bool success = false;
  Assignment assignment;
  double objective_value = 0.0;
  int attempts = 0;
};

BaselineOutcome run_baseline(const Scenario& s, BaselineKind kind,
                             std::uint64_t seed, int max_restarts = 20);

}  // namespace vcauction

#endif  // VCAUCTION_BASELINES_HPP_

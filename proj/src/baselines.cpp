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


#include "vcauction/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <vector>

#include "vcauction/economics.hpp"

namespace vcauction {

const char* to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kEtpm:
      return "etpm";
    case BaselineKind::kLpm:
      return "lpm";
    case BaselineKind::kRmm:
      return "rmm";
  }
  return "unknown";
}

std::optional<BaselineKind> parse_baseline(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "etpm") return BaselineKind::kEtpm;
  if (lower == "lpm") return BaselineKind::kLpm;
  if (lower == "rmm") return BaselineKind::kRmm;
  return std::nullopt;
}

BaselineOutcome run_baseline(const Scenario& s, BaselineKind kind,
                             std::uint64_t seed, int max_restarts) {
  const Market m(s);
  std::mt19937_64 rng(seed);
  BaselineOutcome out;
  std::vector<int> order(m.buyer_count());
  std::vector<int> admissible;

  for (int attempt = 0; attempt <= max_restarts; ++attempt) {
    ++out.attempts;
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> seller_of_buyer(m.buyer_count(), -1);
    std::vector<char> used(m.seller_count(), 0);
    bool dead_end = false;
    for (int b : order) {
      admissible.clear();
      for (int k = 0; k < m.seller_count(); ++k) {
        if (!used[k] && m.pair_ok(b, k) && m.compatible(b, k, seller_of_buyer)) {
          admissible.push_back(k);
        }
      }
      if (admissible.empty()) {
        dead_end = true;
        break;
      }
      // Seller indices follow id order, so min_element keeps the lowest id
      // among ties.
      int pick = admissible.front();
      switch (kind) {
        case BaselineKind::kEtpm:
          pick = *std::min_element(admissible.begin(), admissible.end(), [&](int x, int y) {
            return s.sellers[x].capability < s.sellers[y].capability;
          });
          break;
        case BaselineKind::kLpm:
          pick = *std::min_element(admissible.begin(), admissible.end(), [&](int x, int y) {
            return s.sellers[x].bid < s.sellers[y].bid;
          });
          break;
        case BaselineKind::kRmm: {
          std::uniform_int_distribution<std::size_t> d(0, admissible.size() - 1);
          pick = admissible[d(rng)];
          break;
        }
      }
      seller_of_buyer[b] = pick;
      used[pick] = 1;
    }
    if (!dead_end) {
      out.success = true;
      out.assignment = m.to_assignment(seller_of_buyer);
      out.objective_value = m.objective(seller_of_buyer);
      return out;
    }
  }
  return out;
}

}  // namespace vcauction

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

#ifndef VCAUCTION_OPT_SOLVER_HPP_
#define VCAUCTION_OPT_SOLVER_HPP_

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vcauction/economics.hpp"
#include "vcauction/model.hpp"

namespace vcauction {

enum class SolveStatus { kOptimal, kInfeasible, kTruncated };

const char* to_string(SolveStatus status);

using Clock = std::chrono::steady_clock;

struct SolveOptions {
  // C3 is relaxed when false: buyers may stay unmatched.
  bool require_complete = true;
  // Seller (market index) removed from the market.
  std::optional<int> excluded_seller;
  // (buyer, seller) market indices pinned together. The pinned pair skips the
  // positive-UoS test and contributes nothing to the objective, so the result
  // is the best value the other buyers can reach around it.
  std::optional<std::pair<int, int>> forced_pair;
  std::optional<Clock::time_point> deadline;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<int> seller_of_buyer;  // market indices, -1 = unmatched
  double objective = 0.0;
  // Search effort: DFS nodes for the pruned solver, (permutation, subset)
  // candidates for the exhaustive one.
  std::uint64_t explored = 0;

  bool ok() const { return status == SolveStatus::kOptimal; }
};

// Literal two-loop enumeration: every ordering of the buyers against every
// b-subset of sellers, b! * C(s, b) candidates in total. Kept as the oracle.
SolveResult solve_naive(const Market& market, const SolveOptions& options = {});

// Depth-first search over buyers in id order with per-node feasibility
// pruning and the bound "current value + best available value of each
// remaining buyer". Among equal optima the lexicographically smallest pair
// list wins, which matches solve_naive.
SolveResult solve_optimal(const Market& market, const SolveOptions& options = {});

// Scenario-level wrappers.
std::optional<std::pair<Assignment, double>> solve_naive(const Scenario& s);
std::optional<std::pair<Assignment, double>> solve_optimal(const Scenario& s);

// Exact count of candidates solve_naive visits: b! * C(s, b).
std::uint64_t naive_candidate_count(int buyers, int sellers);

struct OptOutcome {
  bool success = false;
  Assignment assignment;
  double objective_value = 0.0;
  std::map<SellerId, double> payments;
  std::uint64_t explored_nodes = 0;
  bool truncated = false;  // deadline hit before the outcome was complete
};

// Welfare of the market without `seller` (the second term of the VCG
// payment). When no complete allocation survives the removal, the seller is
// pivotal and the term is the best value the other buyers reach while the
// seller serves the buyer(s) with the highest service value it can reach.
double welfare_without(const Market& market, int seller,
                       std::optional<Clock::time_point> deadline = std::nullopt);

// Payment = F(K*) - F_without + bid. Throws AuctionError when the seller did
// not win.
double vcg_payment(const Scenario& s, const Assignment& k_star, double f_star,
                   const SellerId& seller);

OptOutcome run_optimal_mechanism(
    const Scenario& s, std::optional<Clock::time_point> deadline = std::nullopt);

struct BidProbe {
  double bid = 0.0;
  bool won = false;
  double payment = 0.0;
  double utility = 0.0;  // payment - true value when won, else 0
  bool beats_truthful = false;
};

struct TruthfulnessReport {
  SellerId seller;
  double true_value = 0.0;
  double truthful_utility = 0.0;
  std::vector<BidProbe> probes;
  int violations = 0;  // probes beating the truthful utility beyond tolerance
};

// 21 evenly spaced bids over [0.5 q, 1.5 q]; q itself is the centre point.
std::vector<double> default_bid_grid(double true_value);

TruthfulnessReport verify_truthfulness_opt(const Scenario& s,
                                           const SellerId& seller,
                                           const std::vector<double>& bid_grid);

}  // namespace vcauction

#endif  // VCAUCTION_OPT_SOLVER_HPP_

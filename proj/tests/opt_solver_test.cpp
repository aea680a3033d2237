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


#include "vcauction/opt_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vcauction/scenario.hpp"

namespace vcauction {
namespace {

using testing::build;
using testing::job;
using testing::set_bid;

// Max-weight complete matching by DP over seller subsets. Exact when every
// seller sits on one SP, where structure preservation never binds.
std::optional<double> bitmask_oracle(const Market& m) {
  const int b = m.buyer_count();
  const int s = m.seller_count();
  const double none = -std::numeric_limits<double>::infinity();
  std::vector<double> best(std::size_t{1} << s, none);
  best[0] = 0.0;
  std::optional<double> answer;
  for (unsigned mask = 0; mask < best.size(); ++mask) {
    if (best[mask] == none) continue;
    const int placed = std::popcount(mask);
    if (placed == b) {
      if (!answer || best[mask] > *answer) answer = best[mask];
      continue;
    }
    for (int k = 0; k < s; ++k) {
      if (mask >> k & 1u || !m.pair_ok(placed, k)) continue;
      auto& next = best[mask | 1u << k];
      next = std::max(next, best[mask] + m.value(placed, k));
    }
  }
  return answer;
}

// Two buyers joined by one edge, one VM per SP.
Scenario two_buyer_scenario(double rate) {
  return build({job(1.0, {1.0, 1.0}, {{{0, 1}, 0.5}})}, {{0.3}, {0.4}, {0.5}},
               {0.1, 1.0, 0.1},
               {{0.0, rate, 0.0}, {rate, 0.0, 0.0}, {0.0, 0.0, 0.0}});
}

TEST(CandidateCount, FactorialTimesBinomial) {
  EXPECT_EQ(naive_candidate_count(2, 3), 6u);
  EXPECT_EQ(naive_candidate_count(3, 5), 60u);
  EXPECT_EQ(naive_candidate_count(4, 8), 1680u);
  EXPECT_EQ(naive_candidate_count(0, 4), 1u);
  EXPECT_EQ(naive_candidate_count(3, 2), 0u);
}

TEST(SolveNaive, VisitsEveryCandidate) {
  // Two buyers, one VM expanding to three ranks.
  const Scenario s = build({job(1.0, {1.0, 1.0})}, {{0.3}}, {0.1, 1.0, 0.1});
  ASSERT_EQ(s.sellers.size(), 3u);
  const Market m(s);
  const SolveResult r = solve_naive(m);
  EXPECT_EQ(r.explored, 6u);
  ASSERT_TRUE(r.ok());
  // Hand enumeration of the six ordered pairs of distinct sellers.
  double best = -1e9;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      if (x == y || !m.pair_ok(0, x) || !m.pair_ok(1, y)) continue;
      best = std::max(best, m.value(0, x) + m.value(1, y));
    }
  }
  EXPECT_NEAR(r.objective, best, 1e-12);
}

TEST(SolveNaive, DegenerateSizes) {
  Scenario three = build({job(1.0, {1.0, 1.0, 1.0})}, {{0.6}}, {0.1, 1.0, 0.1});
  ASSERT_EQ(three.sellers.size(), 1u);
  const SolveResult r = solve_naive(Market(three));
  EXPECT_EQ(r.status, SolveStatus::kInfeasible);
  EXPECT_EQ(r.explored, 0u);

  Scenario empty;
  const SolveResult e = solve_naive(Market(empty));
  EXPECT_TRUE(e.ok());
  EXPECT_EQ(e.explored, 1u);
  EXPECT_EQ(e.objective, 0.0);
  EXPECT_TRUE(solve_optimal(Market(empty)).ok());
}

TEST(SolveOptimal, MatchesBitmaskOracleOnSingleSp) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenConfig cfg = preset("small");
    cfg.sp_count = 1;
    cfg.vms_per_sp = {2, 4};
    cfg.job_types = seed % 2 ? std::vector<int>{1} : std::vector<int>{2};
    cfg.seed = seed;
    const Scenario s = generate(cfg);
    const Market m(s);
    const auto oracle = bitmask_oracle(m);
    const SolveResult fast = solve_optimal(m);
    ASSERT_EQ(oracle.has_value(), fast.ok()) << "seed " << seed;
    if (oracle) EXPECT_NEAR(fast.objective, *oracle, 1e-9) << "seed " << seed;
    const SolveResult slow = solve_naive(m);
    EXPECT_EQ(slow.ok(), fast.ok());
    if (slow.ok()) {
      EXPECT_NEAR(slow.objective, fast.objective, 1e-9);
      EXPECT_EQ(slow.seller_of_buyer, fast.seller_of_buyer);
    }
  }
}

TEST(SolveOptimal, StructurePreservationSteersTheChoice) {
  // Fast sellers sit on SP0; SP0-SP1 contact is poor.
  const Scenario loose = two_buyer_scenario(0.0);
  const Scenario tight = two_buyer_scenario(1.0);
  const auto a = solve_optimal(loose);
  const auto b = solve_optimal(tight);
  ASSERT_TRUE(a && b);
  EXPECT_TRUE(assignment_feasible(tight, b->first, true));
  EXPECT_GE(a->second, b->second - 1e-12);
  for (const auto& s : {loose, tight}) {
    const auto n = solve_naive(s);
    const auto o = solve_optimal(s);
    ASSERT_TRUE(n && o);
    EXPECT_NEAR(n->second, o->second, 1e-12);
    EXPECT_EQ(n->first, o->first);
  }
}

TEST(SolveOptimal, TiesResolveToSmallestPairList) {
  // Two identical VMs: every rank-1 seller is interchangeable.
  const Scenario s = build({job(1.0, {1.0})}, {{0.6, 0.6}}, {0.1, 1.0, 0.1});
  const auto o = solve_optimal(s);
  const auto n = solve_naive(s);
  ASSERT_TRUE(o && n);
  EXPECT_EQ(o->first, n->first);
  EXPECT_EQ(o->first.seller_of({0, 0}), (SellerId{0, 0, 1}));
}

TEST(SolveOptimal, PartialModeMayLeaveBuyersOut) {
  Scenario s = build({job(1.0, {1.0, 0.2})}, {{0.3}}, {0.1, 1.0, 0.1});
  const Market m(s);
  EXPECT_FALSE(solve_optimal(m).ok());  // the second buyer cannot be served
  SolveOptions partial;
  partial.require_complete = false;
  const SolveResult r = solve_optimal(m, partial);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.seller_of_buyer[1], -1);
  EXPECT_NEAR(r.objective, m.value(0, 0), 1e-12);
  EXPECT_THROW(solve_naive(m, partial), std::exception);
}

TEST(SolveOptimal, DeadlineTruncates) {
  GenConfig cfg = preset("large");
  cfg.seed = 5;
  const Market m(generate(cfg));
  SolveOptions o;
  o.deadline = Clock::now();
  EXPECT_EQ(solve_naive(m, o).status, SolveStatus::kTruncated);
  const OptOutcome out = run_optimal_mechanism(generate(cfg), Clock::now());
  EXPECT_FALSE(out.success);
  EXPECT_TRUE(out.truncated);
}

TEST(Vcg, SecondPriceForOneBuyer) {
  Scenario s = build({job(1.0, {1.0})}, {{0.5}, {0.5}}, {0.1, 1.0, 0.1});
  ASSERT_EQ(s.sellers.size(), 4u);
  set_bid(s, {0, 0, 1}, 0.1);  // UoS 0.4
  set_bid(s, {1, 0, 1}, 0.2);  // UoS 0.3
  set_bid(s, {0, 0, 2}, 1.0);
  set_bid(s, {1, 0, 2}, 1.0);
  const OptOutcome o = run_optimal_mechanism(s);
  ASSERT_TRUE(o.success);
  EXPECT_EQ(o.assignment.seller_of({0, 0}), (SellerId{0, 0, 1}));
  EXPECT_NEAR(o.payments.at({0, 0, 1}), 0.4 - 0.3 + 0.1, 1e-12);
  EXPECT_NEAR(vcg_payment(s, o.assignment, o.objective_value, {0, 0, 1}), 0.2, 1e-12);
  EXPECT_THROW(vcg_payment(s, o.assignment, o.objective_value, {1, 0, 1}), AuctionError);
}

TEST(Vcg, PivotalSellerIsPaidItsCriticalBid) {
  Scenario s = build({job(1.0, {0.6})}, {{0.5}}, {0.1, 1.0, 0.1});
  ASSERT_EQ(s.sellers.size(), 1u);
  const OptOutcome o = run_optimal_mechanism(s);
  ASSERT_TRUE(o.success);
  // Without the seller no complete allocation exists; it wins with any bid
  // below alpha * g = 0.1.
  EXPECT_NEAR(o.payments.at({0, 0, 1}), 0.1, 1e-12);
  EXPECT_GE(o.payments.at({0, 0, 1}), s.sellers[0].bid);
}

TEST(Vcg, TruthfulBiddingIsABestResponse) {
  Scenario s = build({job(1.0, {1.0})}, {{0.5}, {0.5}}, {0.1, 1.0, 0.1});
  set_bid(s, {0, 0, 1}, 0.1);
  set_bid(s, {1, 0, 1}, 0.2);
  const auto grid = default_bid_grid(0.1);
  ASSERT_EQ(grid.size(), 21u);
  EXPECT_DOUBLE_EQ(grid[10], 0.1);
  const TruthfulnessReport r = verify_truthfulness_opt(s, {0, 0, 1}, grid);
  EXPECT_EQ(r.violations, 0);
  EXPECT_NEAR(r.truthful_utility, 0.1, 1e-12);
  for (const auto& p : r.probes) EXPECT_LE(p.utility, r.truthful_utility + 1e-9);
}

}  // namespace
}  // namespace vcauction

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


#include "vcauction/maxuosg.hpp"

#include <algorithm>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vcauction/opt_solver.hpp"
#include "vcauction/scenario.hpp"

namespace vcauction {
namespace {

using testing::build;
using testing::job;
using testing::set_bid;

constexpr double kDelta = 1e-3;

// One buyer (t = 1, alpha = 1) and three SPs with a 0.5 s VM each. Rank-2
// sellers have zero gross utility and drop out.
Scenario three_offer_scenario() {
  Scenario s = build({job(1.0, {1.0})}, {{0.5}, {0.5}, {0.5}}, {0.1, 1.0, 0.1});
  set_bid(s, {0, 0, 1}, 0.25);
  set_bid(s, {1, 0, 1}, 0.1);
  set_bid(s, {2, 0, 1}, 0.4);
  return s;
}

// Buyers X = (0,0), t = 0.65 and Y = (0,1), t = 1.0 joined by an edge.
// A = SP0 (0.6 s), B = SP1 (0.7 s), C = SP2 (0.62 s), all bidding 0.01;
// SP0 and SP2 cannot carry the edge. The top entry Y-A leaves X nowhere.
Scenario blocking_scenario() {
  Scenario s = build({job(1.0, {0.65, 1.0}, {{{0, 1}, 0.5}})}, {{0.6}, {0.7}, {0.62}},
                     {0.1, 1.0, 0.1},
                     {{0.0, 0.0, 2.0}, {0.0, 0.0, 0.0}, {2.0, 0.0, 0.0}});
  for (auto& seller : s.sellers) seller.bid = seller.true_value = 0.01;
  return s;
}

TEST(BuyerList, SortedWithCriticalEntryLast) {
  const BuyerPrefList l = build_buyer_list(three_offer_scenario(), {0, 0});
  ASSERT_EQ(l.entries.size(), 4u);
  EXPECT_NEAR(l.entries[0].value, 0.4, 1e-12);
  EXPECT_NEAR(l.entries[1].value, 0.25, 1e-12);
  EXPECT_NEAR(l.entries[2].value, 0.1, 1e-12);
  EXPECT_EQ(l.entries[0].seller, (SellerId{1, 0, 1}));
  EXPECT_TRUE(l.entries[3].is_virtual());
  EXPECT_NEAR(l.entries[3].value, 0.1 - kDelta, 1e-12);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(l.entries[i].index, i);
}

TEST(BuyerList, SingleOfferAndEmptyList) {
  Scenario s = three_offer_scenario();
  s.coverage[0] = {2};
  const BuyerPrefList one = build_buyer_list(s, {0, 0});
  ASSERT_EQ(one.entries.size(), 2u);
  EXPECT_EQ(one.entries[0].seller, (SellerId{2, 0, 1}));
  EXPECT_TRUE(one.entries[1].is_virtual());

  s.jobs[0].components[0].tolerable_time = 0.5;  // no seller is fast enough to gain
  const BuyerPrefList none = build_buyer_list(s, {0, 0});
  ASSERT_EQ(none.entries.size(), 1u);
  EXPECT_TRUE(none.entries[0].is_virtual());
  EXPECT_NEAR(none.entries[0].value, -kDelta, 1e-15);
}

TEST(BuyerList, TopKTruncates) {
  MaxUosgConfig cfg;
  cfg.top_k = 2;
  const BuyerPrefList l = build_buyer_list(three_offer_scenario(), {0, 0}, cfg);
  ASSERT_EQ(l.entries.size(), 3u);
  EXPECT_NEAR(l.entries[2].value, 0.25 - kDelta, 1e-12);
}

TEST(BrokerList, UnionSortedWithIdTieBreak) {
  const Scenario s = blocking_scenario();
  const auto lists = build_buyer_lists(s);
  const BrokerPrefList broker = build_broker_list(lists);
  std::size_t real = 0;
  for (const auto& l : lists) real += l.entries.size() - 1;
  ASSERT_EQ(broker.entries.size(), real);
  for (std::size_t i = 1; i < broker.entries.size(); ++i) {
    EXPECT_GE(broker.entries[i - 1].value, broker.entries[i].value);
    EXPECT_EQ(broker.entries[i].index, static_cast<int>(i));
  }
  EXPECT_EQ(broker.entries[0].buyer, (BuyerId{0, 1}));
  EXPECT_EQ(broker.entries[0].seller, (SellerId{0, 0, 1}));

  BuyerPrefList a{{0, 1}, {{0, {0, 1}, SellerId{3, 0, 1}, 0.5, 0.6, 0.1}}};
  BuyerPrefList b{{0, 0}, {{0, {0, 0}, SellerId{4, 0, 1}, 0.5, 0.6, 0.1}}};
  const BrokerPrefList tie = build_broker_list({a, b});
  EXPECT_EQ(tie.entries[0].buyer, (BuyerId{0, 0}));
}

TEST(Match, GreedyPrefixNeedsNoBacktracking) {
  const Scenario s = three_offer_scenario();
  const MatchResult r = match(s, build_broker_list(build_buyer_lists(s)));
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.assignment.seller_of({0, 0}), (SellerId{1, 0, 1}));
  for (const auto& e : r.trace) {
    EXPECT_NE(e.action, MatchAction::kRemove);
    EXPECT_NE(e.action, MatchAction::kRestart);
  }
}

TEST(Match, BacktracksPastABlockingTopPair) {
  const Scenario s = blocking_scenario();
  const MatchResult r = match(s, build_broker_list(build_buyer_lists(s)));
  ASSERT_TRUE(r.success);
  EXPECT_TRUE(assignment_feasible(s, r.assignment, true));
  EXPECT_EQ(r.assignment.seller_of({0, 1}), (SellerId{1, 0, 1}));
  EXPECT_EQ(r.assignment.seller_of({0, 0}), (SellerId{0, 0, 1}));
  const auto restarts = std::count_if(r.trace.begin(), r.trace.end(), [](const MatchEvent& e) {
    return e.action == MatchAction::kRestart;
  });
  EXPECT_EQ(restarts, 2);
  const auto best = solve_optimal(s);
  ASSERT_TRUE(best);
  EXPECT_EQ(r.assignment, best->first);
}

TEST(Match, UncoverableBuyerFails) {
  Scenario s = blocking_scenario();
  s.jobs[0].components[0].tolerable_time = 0.55;
  s.jobs[0].edges[0].weight = 0.5;
  const MaxUosgOutcome o = run_maxuosg(s);
  EXPECT_FALSE(o.success);
  EXPECT_TRUE(o.payments.empty());
}

TEST(Match, EmptyScenarioSucceeds) {
  const MaxUosgOutcome o = run_maxuosg(Scenario{});
  EXPECT_TRUE(o.success);
  EXPECT_TRUE(o.assignment.empty());
}

TEST(Payment, NextEntryInTheBuyersList) {
  // alpha = 1, t = 0.7: winner c = 0.2 (g = 0.5, bid 0.05); next c = 0.4, p = 0.1.
  BuyerPrefList l{{0, 0},
                  {{0, {0, 0}, SellerId{0, 0, 1}, 0.45, 0.5, 0.05},
                   {1, {0, 0}, SellerId{1, 0, 1}, 0.2, 0.3, 0.1},
                   {2, {0, 0}, std::nullopt, 0.2 - kDelta, 0.0, 0.0}}};
  Assignment a;
  a.add({0, 0}, {0, 0, 1});
  EXPECT_NEAR(payment_maxuosg({l}, a, {0, 0, 1}), 0.3, 1e-12);

  Assignment last;
  last.add({0, 0}, {1, 0, 1});
  EXPECT_NEAR(payment_maxuosg({l}, last, {1, 0, 1}), 0.1 + kDelta, 1e-12);
  EXPECT_THROW(payment_maxuosg({l}, a, {1, 0, 1}), AuctionError);
}

TEST(RunMaxUosg, PropertiesOnRandomScenarios) {
  for (const char* name : {"small", "stress", "tiny", "large"}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      GenConfig cfg = preset(name);
      cfg.seed = seed;
      const Scenario s = generate(cfg);
      const MaxUosgOutcome o = run_maxuosg(s);
      for (const auto& l : o.buyer_lists) {
        for (std::size_t i = 1; i < l.entries.size(); ++i) {
          EXPECT_GE(l.entries[i - 1].value, l.entries[i].value);
          EXPECT_FALSE(l.entries[i - 1].is_virtual());
        }
        EXPECT_TRUE(l.entries.back().is_virtual());
      }
      EXPECT_LE(o.steps, step_budget(o.broker_list.entries.size(), s.buyer_count()));
      if (!o.success) continue;
      EXPECT_TRUE(assignment_feasible(s, o.assignment, true)) << name << " " << seed;
      EXPECT_NEAR(o.objective_value, objective(s, o.assignment), 1e-12);
      EXPECT_EQ(o.payments.size(), o.assignment.size());
      for (const auto& [seller, price] : o.payments) {
        EXPECT_GE(price, s.seller(seller).bid - 1e-12) << name << " " << seed;
      }
    }
  }
}

TEST(Truthfulness, NoGainWhileTheRankingHolds) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenConfig cfg = preset("small");
    cfg.seed = seed;
    const Scenario s = generate(cfg);
    const MaxUosgOutcome o = run_maxuosg(s);
    ASSERT_TRUE(o.success);
    for (const auto& p : o.assignment.pairs()) {
      const auto r = verify_truthfulness_maxuosg(
          s, p.seller, default_bid_grid(s.seller(p.seller).true_value));
      EXPECT_EQ(r.order_preserved_gains, 0) << seed;
      EXPECT_GE(r.truthful_utility, -1e-12);
      for (const auto& probe : r.probes) {
        if (!probe.won) EXPECT_EQ(probe.utility, 0.0);
      }
    }
  }
}

TEST(Truthfulness, PricingOutYieldsZero) {
  const Scenario s = three_offer_scenario();
  const auto r = verify_truthfulness_maxuosg(s, {1, 0, 1}, {0.1, 0.6});
  ASSERT_EQ(r.probes.size(), 2u);
  EXPECT_TRUE(r.probes[0].won);
  EXPECT_FALSE(r.probes[1].won);
  EXPECT_EQ(r.probes[1].utility, 0.0);
  EXPECT_EQ(r.probes[1].classification, BidClass::kRiskZero);
}

}  // namespace
}  // namespace vcauction

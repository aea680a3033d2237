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


#include "vcauction/economics.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace vcauction {
namespace {

using testing::build;
using testing::triangle_scenario;
using testing::job;

Assignment solution1() {
  Assignment a;
  a.add({0, 0}, {0, 1, 1});
  a.add({0, 1}, {1, 0, 1});
  a.add({0, 2}, {1, 0, 2});
  return a;
}

TEST(TrueValuation, LinearInCapability) {
  EXPECT_NEAR(true_valuation(0.8, {0.8, 0.95, 1.0}), 0.31, 1e-12);
  EXPECT_NEAR(true_valuation(0.8, {0.8, 0.95, 0.25}), 0.0775, 1e-12);
  EXPECT_THROW(true_valuation(0.0, {}), std::invalid_argument);
  EXPECT_THROW(true_valuation(2.0, {0.8, 0.95, 1.0}), std::invalid_argument);
}

TEST(Uos, NetBenefitOfTimeSaved) {
  EXPECT_DOUBLE_EQ(gross_utility(0.7, 0.2), 0.7 - 0.2);
  EXPECT_NEAR(uos(1.2, 0.5, 0.3).value, 0.3, 1e-12);
}

TEST(PairUos, MatchesHandComputation) {
  const Scenario s = triangle_scenario();
  // c = 0.8, q = 0.1 * (1 - 0.1 * 0.8) = 0.092, t = 2.
  EXPECT_NEAR(pair_uos(s, {0, 0}, {0, 1, 1}), 2.0 - 0.8 - 0.092, 1e-12);
  EXPECT_NEAR(objective(s, solution1()),
              (2.0 - 0.8 - 0.092) + (2.5 - 1.4 - 0.086) + (3.0 - 2.8 - 0.072), 1e-12);
}

TEST(PairFeasible, ScreensCoverageCapabilityAndUos) {
  Scenario s = triangle_scenario();
  EXPECT_TRUE(pair_feasible(s, {0, 0}, {0, 1, 1}));
  EXPECT_FALSE(pair_feasible(s, {0, 0}, {1, 0, 2}));  // 2.8 s > 2.0 s
  s.coverage[0] = {1, 2};
  EXPECT_FALSE(pair_feasible(s, {0, 0}, {0, 1, 1}));
  s = triangle_scenario();
  s.seller({0, 1, 1}).bid = 1.2;  // UoS exactly 0
  EXPECT_FALSE(pair_feasible(s, {0, 0}, {0, 1, 1}));
}

TEST(EdgeFeasible, ThresholdOnContactProbability) {
  Scenario s = triangle_scenario();
  EXPECT_TRUE(edge_feasible(s, 1, 1, 0.5));
  EXPECT_TRUE(edge_feasible(s, 0, 1, 0.5));  // exp(-0.05) = 0.951
  s.epsilon = 0.96;
  EXPECT_FALSE(edge_feasible(s, 0, 1, 0.5));
  EXPECT_TRUE(edge_feasible(s, 2, 2, 0.5));
}

TEST(AssignmentFeasible, ChecksAllConstraints) {
  Scenario s = triangle_scenario();
  EXPECT_TRUE(assignment_feasible(s, solution1(), true));

  Assignment partial = solution1();
  partial.remove_buyer({0, 2});
  EXPECT_FALSE(assignment_feasible(s, partial, true));
  EXPECT_TRUE(assignment_feasible(s, partial, false));

  Assignment unknown;
  unknown.add({0, 0}, {9, 0, 1});
  EXPECT_FALSE(assignment_feasible(s, unknown, false));
  Assignment bad_buyer;
  bad_buyer.add({3, 0}, {0, 1, 1});
  EXPECT_FALSE(assignment_feasible(s, bad_buyer, false));

  s.contact_rate[0][1] = s.contact_rate[1][0] = 2.0;  // exp(-1) < 0.9
  EXPECT_FALSE(assignment_feasible(s, solution1(), true));
}

TEST(MarketTest, TablesAgreeWithScalarFunctions) {
  const Scenario s = triangle_scenario();
  const Market m(s);
  ASSERT_EQ(m.buyer_count(), 3);
  ASSERT_EQ(m.seller_count(), 11);
  for (int b = 0; b < m.buyer_count(); ++b) {
    for (int k = 0; k < m.seller_count(); ++k) {
      EXPECT_DOUBLE_EQ(m.value(b, k), pair_uos(s, m.buyer_id(b), m.seller_id(k)));
      EXPECT_EQ(m.pair_ok(b, k), pair_feasible(s, m.buyer_id(b), m.seller_id(k)));
    }
  }
  const auto a = solution1();
  EXPECT_EQ(m.to_assignment(m.from_assignment(a)), a);
  EXPECT_NEAR(m.objective(m.from_assignment(a)), objective(s, a), 1e-12);
  EXPECT_THROW(m.seller_index({7, 7, 7}), AuctionError);
}

TEST(MarketTest, CompatibleChecksPlacedNeighboursOnly) {
  Scenario s = build({job(1.0, {1.0, 1.0}, {{{0, 1}, 0.5}})}, {{0.3}, {0.3}}, {0.1, 1.0, 0.1},
                     {{0.0, 1.0}, {1.0, 0.0}});
  const Market m(s);
  const int on_sp0 = m.seller_index({0, 0, 1});
  const int on_sp1 = m.seller_index({1, 0, 1});
  std::vector<int> placed{on_sp0, -1};
  EXPECT_TRUE(m.compatible(1, m.seller_index({0, 0, 2}), placed));
  EXPECT_FALSE(m.compatible(1, on_sp1, placed));  // exp(-0.5) < 0.9
  std::vector<int> empty{-1, -1};
  EXPECT_TRUE(m.compatible(1, on_sp1, empty));
}

}  // namespace
}  // namespace vcauction

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

// Structure-preserved matching driven by utility-of-service gain.
//
// Each buyer ranks the sellers it can use by UoS and ends its list with a
// virtual "critical" seller. The broker merges all real entries into one
// ranking and walks it from the top, accepting pairs that keep the one-to-one
// and structure-preservation constraints, backtracking when the walk ends
// with buyers left over. A winner is paid its buyer's gross benefit minus the
// UoS of the next entry in that buyer's list.

#ifndef VCAUCTION_MAXUOSG_HPP_
#define VCAUCTION_MAXUOSG_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcauction/economics.hpp"
#include "vcauction/model.hpp"

namespace vcauction {

struct MaxUosgConfig {
  // Gap between the last real entry and the virtual critical seller.
  double delta = 1e-3;
  // Keep only the best `top_k` sellers per buyer. Unset keeps all of them.
  std::optional<int> top_k;
  // Cap the number of examined broker entries at (L - b) * b + L.
  bool bound_steps = true;
};

struct PrefEntry {
  int index = 0;  // 0-based position in the owning list
  BuyerId buyer;
  std::optional<SellerId> seller;  // nullopt = virtual critical seller
  double value = 0.0;              // alpha * g - p
  double service_value = 0.0;      // alpha * g (0 for the virtual seller)
  double bid = 0.0;

  bool is_virtual() const { return !seller.has_value(); }
  bool operator==(const PrefEntry&) const = default;
};

struct BuyerPrefList {
  BuyerId buyer;
  std::vector<PrefEntry> entries;

  bool operator==(const BuyerPrefList&) const = default;
};

struct BrokerPrefList {
  std::vector<PrefEntry> entries;

  bool operator==(const BrokerPrefList&) const = default;
};

BuyerPrefList build_buyer_list(const Scenario& s, const BuyerId& b,
                               const MaxUosgConfig& cfg = {});
std::vector<BuyerPrefList> build_buyer_lists(const Scenario& s,
                                             const MaxUosgConfig& cfg = {});

// Real entries of every buyer list, best first; equal values fall back to
// (buyer id, seller id).
BrokerPrefList build_broker_list(const std::vector<BuyerPrefList>& lists);

enum class MatchAction { kAccept, kReject, kRemove, kRestart };

const char* to_string(MatchAction action);

struct MatchEvent {
  int position = 0;  // broker-list position
  MatchAction action = MatchAction::kReject;

  bool operator==(const MatchEvent&) const = default;
};

struct MatchResult {
  bool success = false;
  Assignment assignment;
  std::vector<MatchEvent> trace;
  std::size_t steps = 0;  // broker entries examined
  bool budget_exhausted = false;
};

std::size_t step_budget(std::size_t list_length, std::size_t buyers);

MatchResult match(const Scenario& s, const BrokerPrefList& broker,
                  const MaxUosgConfig& cfg = {});

// alpha * g(winner) - value of the entry right behind the winner in its
// buyer's list. Throws AuctionError when the winner is unmatched or missing
// from the list.
double payment_maxuosg(const std::vector<BuyerPrefList>& lists,
                       const Assignment& a, const SellerId& winner);

struct MaxUosgOutcome {
  bool success = false;
  Assignment assignment;
  double objective_value = 0.0;
  std::map<SellerId, double> payments;
  std::vector<MatchEvent> match_trace;
  std::size_t steps = 0;
  std::vector<BuyerPrefList> buyer_lists;
  BrokerPrefList broker_list;
};

MaxUosgOutcome run_maxuosg(const Scenario& s, const MaxUosgConfig& cfg = {});

enum class BidClass { kNoGain, kEqual, kRiskLoss, kRiskZero, kGain };

const char* to_string(BidClass c);

struct MaxUosgProbe {
  double bid = 0.0;
  bool won = false;
  double payment = 0.0;
  double utility = 0.0;
  BidClass classification = BidClass::kEqual;
  // The misreport left the broker ranking and every critical value as they
  // were under truthful bidding.
  bool order_preserved = false;
};

struct MaxUosgTruthReport {
  SellerId seller;
  double true_value = 0.0;
  double truthful_utility = 0.0;
  std::vector<MaxUosgProbe> probes;
  int order_preserved_gains = 0;  // gains that must never happen
  int gains = 0;
};

MaxUosgTruthReport verify_truthfulness_maxuosg(const Scenario& s,
                                               const SellerId& seller,
                                               const std::vector<double>& bid_grid,
                                               const MaxUosgConfig& cfg = {});

}  // namespace vcauction

#endif  // VCAUCTION_MAXUOSG_HPP_

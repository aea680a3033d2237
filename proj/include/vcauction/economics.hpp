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

#ifndef VCAUCTION_ECONOMICS_HPP_
#define VCAUCTION_ECONOMICS_HPP_

#include <span>
#include <vector>

#include "vcauction/model.hpp"

namespace vcauction {

// q = price_scale * (beta2 - beta1 * capability). Throws if the result is not
// a positive price.
double true_valuation(double capability, const ValuationConfig& cfg);

// Time saved by the buyer: t - c. Negative when the seller is too slow.
inline double gross_utility(double tolerable_time, double capability) {
  return tolerable_time - capability;
}

// Utility-of-service of one buyer: alpha * g - p.
struct Uos {
  double value = 0.0;
};

inline Uos uos(double alpha, double gross, double bid) {
  return {alpha * gross - bid};
}

// UoS of a concrete buyer/seller pair under the scenario's current bids.
double pair_uos(const Scenario& s, const BuyerId& b, const SellerId& sel);

// Total UoS of the matched pairs. Throws AuctionError on unknown ids.
double objective(const Scenario& s, const Assignment& a);

// Coverage, capability and strictly positive UoS.
bool pair_feasible(const Scenario& s, const BuyerId& b, const SellerId& sel);

// Structure preservation for one job edge whose endpoints run on `sp_a` and
// `sp_b`. Sellers of one provider always satisfy it.
bool edge_feasible(const Scenario& s, int sp_a, int sp_b, double weight);

// Checks pair feasibility on every pair, structure preservation on every job
// edge with both endpoints matched, and the one-to-one property. Every buyer
// must be matched as well when `require_complete` is set.
bool assignment_feasible(const Scenario& s, const Assignment& a,
                         bool require_complete);

// Dense, index-based view of a scenario used by the mechanisms' inner loops.
// Buyers are indexed in Scenario::buyers() order, sellers in Scenario::sellers
// order, so index order equals id order on both sides.
class Market {
 public:
  explicit Market(const Scenario& s);

  struct Neighbor {
    int buyer;
    int edge;  // index into the market-wide edge table
  };

  int buyer_count() const { return static_cast<int>(buyers_.size()); }
  int seller_count() const { return static_cast<int>(seller_sp_.size()); }
  int sp_count() const { return sp_count_; }

  const BuyerId& buyer_id(int b) const { return buyers_[b]; }
  const SellerId& seller_id(int s) const { return seller_ids_[s]; }
  int buyer_index(const BuyerId& id) const;
  int seller_index(const SellerId& id) const;

  double value(int b, int s) const { return value_[b * stride_ + s]; }
  // alpha * g, the buyer's gross benefit in price units.
  double service_value(int b, int s) const { return service_[b * stride_ + s]; }
  bool pair_ok(int b, int s) const { return pair_ok_[b * stride_ + s] != 0; }
  // Coverage and capability only; independent of bids.
  bool reachable(int b, int s) const { return reachable_[b * stride_ + s] != 0; }

  int seller_sp(int s) const { return seller_sp_[s]; }
  std::span<const Neighbor> neighbors(int b) const { return neighbors_[b]; }
  bool edge_ok(int edge, int sp_a, int sp_b) const {
    return edge_ok_[(edge * sp_count_ + sp_a) * sp_count_ + sp_b] != 0;
  }

  // Structure preservation of placing buyer b on seller s against the
  // neighbours already placed in `seller_of_buyer` (-1 = unmatched).
  bool compatible(int b, int s, std::span<const int> seller_of_buyer) const;

  double objective(std::span<const int> seller_of_buyer) const;
  Assignment to_assignment(std::span<const int> seller_of_buyer) const;
  std::vector<int> from_assignment(const Assignment& a) const;

 private:
  std::vector<BuyerId> buyers_;
  std::vector<SellerId> seller_ids_;
  std::vector<int> seller_sp_;
  int sp_count_ = 0;
  int stride_ = 0;
  std::vector<double> value_;
  std::vector<double> service_;
  std::vector<char> pair_ok_;
  std::vector<char> reachable_;
  std::vector<std::vector<Neighbor>> neighbors_;
  std::vector<char> edge_ok_;
};

}  // namespace vcauction

#endif  // VCAUCTION_ECONOMICS_HPP_

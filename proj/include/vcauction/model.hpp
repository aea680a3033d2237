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

#ifndef VCAUCTION_MODEL_HPP_
#define VCAUCTION_MODEL_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vcauction {

// Absolute tolerance used for every feasibility tie (times and prices are
// continuous draws, so exact comparisons would be meaningless).
inline constexpr double kTolerance = 1e-9;

class AuctionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A component of a graph job. Components are the buyers of the auction.
struct BuyerId {
  int job = 0;
  int component = 0;

  auto operator<=>(const BuyerId&) const = default;
  bool operator==(const BuyerId&) const = default;
};

// The rank-th virtual seller carved out of VM `vm` on service provider `sp`.
// Rank r means the request is served after r - 1 earlier ones.
struct SellerId {
  int sp = 0;
  int vm = 0;
  int rank = 1;

  auto operator<=>(const SellerId&) const = default;
  bool operator==(const SellerId&) const = default;
};

std::string to_string(const BuyerId& id);
std::string to_string(const SellerId& id);

struct Component {
  double tolerable_time = 0.0;  // seconds

  bool operator==(const Component&) const = default;
};

struct JobEdge {
  std::pair<int, int> endpoints;
  double weight = 0.0;  // requested contact duration, seconds

  bool operator==(const JobEdge&) const = default;
};

// Undirected weighted job graph submitted by one job owner.
struct GraphJob {
  int owner_index = 0;
  double alpha = 1.0;  // price / time sensitivity of the owner
  std::vector<Component> components;
  std::vector<JobEdge> edges;

  bool operator==(const GraphJob&) const = default;
};

struct VirtualMachine {
  double base_time = 0.0;  // seconds to process one component
  int max_rank = 0;

  bool operator==(const VirtualMachine&) const = default;
};

struct ServiceProvider {
  int index = 0;
  std::vector<VirtualMachine> vms;

  bool operator==(const ServiceProvider&) const = default;
};

struct Seller {
  SellerId id;
  double capability = 0.0;  // seconds, rank * base_time
  double bid = 0.0;
  double true_value = 0.0;

  bool operator==(const Seller&) const = default;
};

// Linear true valuation q = price_scale * (beta2 - beta1 * capability).
// price_scale expresses prices in a unit other than the raw formula's.
struct ValuationConfig {
  double beta1 = 0.8;
  double beta2 = 0.95;
  double price_scale = 1.0;

  bool operator==(const ValuationConfig&) const = default;
};

struct Scenario {
  std::vector<GraphJob> jobs;
  std::vector<ServiceProvider> sps;
  std::vector<std::vector<double>> contact_rate;  // symmetric, zero diagonal
  std::vector<std::vector<int>> coverage;         // per job: reachable SPs
  double epsilon = 0.9;
  ValuationConfig valuation;
  std::vector<Seller> sellers;  // sorted by SellerId
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;

  int buyer_count() const;
  // Buyers in (job, component) order.
  std::vector<BuyerId> buyers() const;
  double max_tolerable_time() const;

  const GraphJob& job_of(const BuyerId& id) const;
  double tolerable_time(const BuyerId& id) const;

  // Position of the seller in `sellers`, or nullopt.
  std::optional<int> seller_index(const SellerId& id) const;
  const Seller& seller(const SellerId& id) const;
  Seller& seller(const SellerId& id);

  bool covers(int job, int sp) const;
  double rate(int sp_a, int sp_b) const;
};

struct MatchedPair {
  BuyerId buyer;
  SellerId seller;

  auto operator<=>(const MatchedPair&) const = default;
  bool operator==(const MatchedPair&) const = default;
};

// Partial one-to-one mapping buyer -> seller. Pairs are kept sorted by buyer.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<MatchedPair> pairs);

  // Throws AuctionError if the buyer or the seller is already present.
  void add(const BuyerId& buyer, const SellerId& seller);
  bool remove_buyer(const BuyerId& buyer);

  std::optional<SellerId> seller_of(const BuyerId& buyer) const;
  std::optional<BuyerId> buyer_of(const SellerId& seller) const;
  bool has_seller(const SellerId& seller) const {
    return buyer_of(seller).has_value();
  }

  const std::vector<MatchedPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }

  // No buyer and no seller appears twice.
  bool is_injective() const;

  bool operator==(const Assignment&) const = default;

 private:
  std::vector<MatchedPair> pairs_;
};

// Every VM yields ranks 1..floor(max_demand / base_time). Bids and true
// values are left at zero for the valuation step to fill in.
std::vector<Seller> expand_vms(const std::vector<ServiceProvider>& sps,
                               double max_demand);

int max_rank_for(double base_time, double max_demand);

// Probability that an exponentially distributed contact with the given rate
// lasts longer than `duration`.
double contact_probability(double rate, double duration);

struct Violation {
  std::string where;
  std::string message;

  bool operator==(const Violation&) const = default;
};

// Checks every structural invariant and reports all breaches.
std::vector<Violation> validate_scenario(const Scenario& s);

}  // namespace vcauction

#endif  // VCAUCTION_MODEL_HPP_

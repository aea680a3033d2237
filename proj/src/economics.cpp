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

#include <algorithm>
#include <cmath>

namespace vcauction {

double true_valuation(double capability, const ValuationConfig& cfg) {
  if (!(capability > 0.0)) {
    throw std::invalid_argument("capability must be positive");
  }
  const double q = cfg.price_scale * (cfg.beta2 - cfg.beta1 * capability);
  if (!(q > 0.0)) {
    throw std::invalid_argument("valuation is not a positive price");
  }
  return q;
}

double pair_uos(const Scenario& s, const BuyerId& b, const SellerId& sel) {
  const GraphJob& job = s.job_of(b);
  const Seller& seller = s.seller(sel);
  const double g =
      gross_utility(job.components[b.component].tolerable_time, seller.capability);
  return uos(job.alpha, g, seller.bid).value;
}

double objective(const Scenario& s, const Assignment& a) {
  double total = 0.0;
  for (const auto& p : a.pairs()) total += pair_uos(s, p.buyer, p.seller);
  return total;
}

bool pair_feasible(const Scenario& s, const BuyerId& b, const SellerId& sel) {
  const GraphJob& job = s.job_of(b);
  const Seller& seller = s.seller(sel);
  if (!s.covers(b.job, sel.sp)) return false;
  const double t = job.components[b.component].tolerable_time;
  if (t + kTolerance < seller.capability) return false;
  return uos(job.alpha, gross_utility(t, seller.capability), seller.bid).value >
         kTolerance;
}

bool edge_feasible(const Scenario& s, int sp_a, int sp_b, double weight) {
  if (sp_a == sp_b) return true;
  return contact_probability(s.rate(sp_a, sp_b), weight) + kTolerance >= s.epsilon;
}

bool assignment_feasible(const Scenario& s, const Assignment& a,
                         bool require_complete) {
  if (!a.is_injective()) return false;
  for (const auto& p : a.pairs()) {
    const BuyerId& b = p.buyer;
    if (b.job < 0 || b.job >= static_cast<int>(s.jobs.size())) return false;
    if (b.component < 0 ||
        b.component >= static_cast<int>(s.jobs[b.job].components.size())) {
      return false;
    }
    if (!s.seller_index(p.seller)) return false;
    if (!pair_feasible(s, p.buyer, p.seller)) return false;
  }
  for (int n = 0; n < static_cast<int>(s.jobs.size()); ++n) {
    for (const JobEdge& e : s.jobs[n].edges) {
      auto sa = a.seller_of({n, e.endpoints.first});
      auto sb = a.seller_of({n, e.endpoints.second});
      if (!sa || !sb) continue;
      if (!edge_feasible(s, sa->sp, sb->sp, e.weight)) return false;
    }
  }
  if (require_complete &&
      static_cast<int>(a.size()) != s.buyer_count()) {
    return false;
  }
  return true;
}

Market::Market(const Scenario& s) {
  buyers_ = s.buyers();
  sp_count_ = static_cast<int>(s.sps.size());
  for (const auto& seller : s.sellers) {
    seller_ids_.push_back(seller.id);
    seller_sp_.push_back(seller.id.sp);
  }
  stride_ = static_cast<int>(seller_ids_.size());
  const std::size_t cells = buyers_.size() * seller_ids_.size();
  value_.assign(cells, 0.0);
  service_.assign(cells, 0.0);
  pair_ok_.assign(cells, 0);
  reachable_.assign(cells, 0);

  for (int b = 0; b < buyer_count(); ++b) {
    const BuyerId& id = buyers_[b];
    const GraphJob& job = s.jobs[id.job];
    const double t = job.components[id.component].tolerable_time;
    for (int k = 0; k < seller_count(); ++k) {
      const Seller& seller = s.sellers[k];
      const double g = gross_utility(t, seller.capability);
      const std::size_t cell = static_cast<std::size_t>(b) * stride_ + k;
      service_[cell] = job.alpha * g;
      value_[cell] = uos(job.alpha, g, seller.bid).value;
      const bool reach = s.covers(id.job, seller.id.sp) &&
                         t + kTolerance >= seller.capability;
      reachable_[cell] = reach;
      pair_ok_[cell] = reach && value_[cell] > kTolerance;
    }
  }

  // Buyers of one job are contiguous, so the first buyer index of job n is
  // the running component count.
  std::vector<int> job_offset(s.jobs.size(), 0);
  for (std::size_t n = 1; n < s.jobs.size(); ++n) {
    job_offset[n] = job_offset[n - 1] +
                    static_cast<int>(s.jobs[n - 1].components.size());
  }
  neighbors_.assign(buyers_.size(), {});
  int edge_count = 0;
  for (const auto& job : s.jobs) edge_count += static_cast<int>(job.edges.size());
  edge_ok_.assign(static_cast<std::size_t>(edge_count) * sp_count_ * sp_count_, 0);
  int edge = 0;
  for (std::size_t n = 0; n < s.jobs.size(); ++n) {
    for (const JobEdge& e : s.jobs[n].edges) {
      const int a = job_offset[n] + e.endpoints.first;
      const int b = job_offset[n] + e.endpoints.second;
      neighbors_[a].push_back({b, edge});
      neighbors_[b].push_back({a, edge});
      for (int m = 0; m < sp_count_; ++m) {
        for (int m2 = 0; m2 < sp_count_; ++m2) {
          edge_ok_[(static_cast<std::size_t>(edge) * sp_count_ + m) * sp_count_ + m2] =
              edge_feasible(s, m, m2, e.weight);
        }
      }
      ++edge;
    }
  }
}

int Market::buyer_index(const BuyerId& id) const {
  auto it = std::lower_bound(buyers_.begin(), buyers_.end(), id);
  if (it == buyers_.end() || *it != id) {
    throw AuctionError("unknown buyer " + to_string(id));
  }
  return static_cast<int>(it - buyers_.begin());
}

int Market::seller_index(const SellerId& id) const {
  auto it = std::lower_bound(seller_ids_.begin(), seller_ids_.end(), id);
  if (it == seller_ids_.end() || *it != id) {
    throw AuctionError("unknown seller " + to_string(id));
  }
  return static_cast<int>(it - seller_ids_.begin());
}

bool Market::compatible(int b, int s, std::span<const int> seller_of_buyer) const {
  const int sp = seller_sp_[s];
  for (const Neighbor& nb : neighbors_[b]) {
    const int other = seller_of_buyer[nb.buyer];
    if (other < 0) continue;
    if (!edge_ok(nb.edge, sp, seller_sp_[other])) return false;
  }
  return true;
}

double Market::objective(std::span<const int> seller_of_buyer) const {
  double total = 0.0;
  for (int b = 0; b < static_cast<int>(seller_of_buyer.size()); ++b) {
    if (seller_of_buyer[b] >= 0) total += value(b, seller_of_buyer[b]);
  }
  return total;
}

Assignment Market::to_assignment(std::span<const int> seller_of_buyer) const {
  Assignment a;
  for (int b = 0; b < static_cast<int>(seller_of_buyer.size()); ++b) {
    if (seller_of_buyer[b] >= 0) a.add(buyers_[b], seller_ids_[seller_of_buyer[b]]);
  }
  return a;
}

std::vector<int> Market::from_assignment(const Assignment& a) const {
  std::vector<int> out(buyers_.size(), -1);
  for (const auto& p : a.pairs()) out[buyer_index(p.buyer)] = seller_index(p.seller);
  return out;
}

}  // namespace vcauction

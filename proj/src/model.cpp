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

#include "vcauction/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace vcauction {

std::string to_string(const BuyerId& id) {
  std::ostringstream os;
  os << "b(" << id.job << "," << id.component << ")";
  return os.str();
}

std::string to_string(const SellerId& id) {
  std::ostringstream os;
  os << "s(" << id.sp << "," << id.vm << "," << id.rank << ")";
  return os.str();
}

int Scenario::buyer_count() const {
  int n = 0;
  for (const auto& job : jobs) n += static_cast<int>(job.components.size());
  return n;
}

std::vector<BuyerId> Scenario::buyers() const {
  std::vector<BuyerId> out;
  out.reserve(buyer_count());
  for (int n = 0; n < static_cast<int>(jobs.size()); ++n) {
    for (int x = 0; x < static_cast<int>(jobs[n].components.size()); ++x) {
      out.push_back({n, x});
    }
  }
  return out;
}

double Scenario::max_tolerable_time() const {
  double best = 0.0;
  for (const auto& job : jobs) {
    for (const auto& c : job.components) best = std::max(best, c.tolerable_time);
  }
  return best;
}

const GraphJob& Scenario::job_of(const BuyerId& id) const {
  if (id.job < 0 || id.job >= static_cast<int>(jobs.size())) {
    throw AuctionError("unknown buyer " + to_string(id));
  }
  const GraphJob& job = jobs[id.job];
  if (id.component < 0 ||
      id.component >= static_cast<int>(job.components.size())) {
    throw AuctionError("unknown buyer " + to_string(id));
  }
  return job;
}

double Scenario::tolerable_time(const BuyerId& id) const {
  return job_of(id).components[id.component].tolerable_time;
}

std::optional<int> Scenario::seller_index(const SellerId& id) const {
  auto it = std::lower_bound(
      sellers.begin(), sellers.end(), id,
      [](const Seller& s, const SellerId& key) { return s.id < key; });
  if (it == sellers.end() || it->id != id) return std::nullopt;
  return static_cast<int>(it - sellers.begin());
}

const Seller& Scenario::seller(const SellerId& id) const {
  auto idx = seller_index(id);
  if (!idx) throw AuctionError("unknown seller " + to_string(id));
  return sellers[*idx];
}

Seller& Scenario::seller(const SellerId& id) {
  auto idx = seller_index(id);
  if (!idx) throw AuctionError("unknown seller " + to_string(id));
  return sellers[*idx];
}

bool Scenario::covers(int job, int sp) const {
  if (job < 0 || job >= static_cast<int>(coverage.size())) return false;
  const auto& c = coverage[job];
  return std::find(c.begin(), c.end(), sp) != c.end();
}

double Scenario::rate(int sp_a, int sp_b) const {
  if (sp_a == sp_b) return 0.0;
  return contact_rate.at(sp_a).at(sp_b);
}

Assignment::Assignment(std::vector<MatchedPair> pairs) {
  for (const auto& p : pairs) add(p.buyer, p.seller);
}

void Assignment::add(const BuyerId& buyer, const SellerId& seller) {
  if (seller_of(buyer)) {
    throw AuctionError("buyer " + to_string(buyer) + " already matched");
  }
  if (buyer_of(seller)) {
    throw AuctionError("seller " + to_string(seller) + " already matched");
  }
  MatchedPair pair{buyer, seller};
  pairs_.insert(std::upper_bound(pairs_.begin(), pairs_.end(), pair), pair);
}

bool Assignment::remove_buyer(const BuyerId& buyer) {
  auto it = std::find_if(pairs_.begin(), pairs_.end(),
                         [&](const MatchedPair& p) { return p.buyer == buyer; });
  if (it == pairs_.end()) return false;
  pairs_.erase(it);
  return true;
}

std::optional<SellerId> Assignment::seller_of(const BuyerId& buyer) const {
  for (const auto& p : pairs_) {
    if (p.buyer == buyer) return p.seller;
  }
  return std::nullopt;
}

std::optional<BuyerId> Assignment::buyer_of(const SellerId& seller) const {
  for (const auto& p : pairs_) {
    if (p.seller == seller) return p.buyer;
  }
  return std::nullopt;
}

bool Assignment::is_injective() const {
  std::set<BuyerId> buyers;
  std::set<SellerId> sellers;
  for (const auto& p : pairs_) {
    if (!buyers.insert(p.buyer).second) return false;
    if (!sellers.insert(p.seller).second) return false;
  }
  return true;
}

int max_rank_for(double base_time, double max_demand) {
  if (base_time <= 0.0) return 0;
  return static_cast<int>(std::floor(max_demand / base_time + kTolerance));
}

std::vector<Seller> expand_vms(const std::vector<ServiceProvider>& sps,
                               double max_demand) {
  if (!(max_demand > 0.0)) {
    throw std::invalid_argument("max_demand must be positive");
  }
  std::vector<Seller> out;
  for (int m = 0; m < static_cast<int>(sps.size()); ++m) {
    const auto& vms = sps[m].vms;
    for (int y = 0; y < static_cast<int>(vms.size()); ++y) {
      const double base = vms[y].base_time;
      if (!(base > 0.0)) {
        throw std::invalid_argument("VM base_time must be positive");
      }
      const int ranks = max_rank_for(base, max_demand);
      for (int r = 1; r <= ranks; ++r) {
        Seller s;
        s.id = {sps[m].index, y, r};
        s.capability = r * base;
        out.push_back(s);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Seller& a, const Seller& b) { return a.id < b.id; });
  return out;
}

double contact_probability(double rate, double duration) {
  if (rate < 0.0 || duration < 0.0 || std::isnan(rate) || std::isnan(duration)) {
    throw std::invalid_argument("contact rate and duration must be >= 0");
  }
  return std::exp(-duration * rate);
}

namespace {

class ViolationSink {
 public:
  void add(std::string where, std::string message) {
    out_.push_back({std::move(where), std::move(message)});
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

std::string job_path(int n) { return "jobs[" + std::to_string(n) + "]"; }

void check_jobs(const Scenario& s, ViolationSink& sink) {
  for (int n = 0; n < static_cast<int>(s.jobs.size()); ++n) {
    const GraphJob& job = s.jobs[n];
    const std::string path = job_path(n);
    if (job.owner_index != n) sink.add(path, "owner_index does not match position");
    if (!(job.alpha > 0.0)) sink.add(path, "alpha must be positive");
    if (job.components.empty()) sink.add(path, "job has no components");
    const int size = static_cast<int>(job.components.size());
    for (int x = 0; x < size; ++x) {
      if (!(job.components[x].tolerable_time > 0.0)) {
        sink.add(path + ".components[" + std::to_string(x) + "]",
                 "tolerable_time must be positive");
      }
    }
    std::set<std::pair<int, int>> seen;
    for (int e = 0; e < static_cast<int>(job.edges.size()); ++e) {
      const JobEdge& edge = job.edges[e];
      const std::string epath = path + ".edges[" + std::to_string(e) + "]";
      auto [a, b] = edge.endpoints;
      if (a < 0 || b < 0 || a >= size || b >= size) {
        sink.add(epath, "endpoint out of range");
        continue;
      }
      if (a == b) sink.add(epath, "self-loop");
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
        sink.add(epath, "duplicate edge");
      }
      if (!(edge.weight >= 0.0)) sink.add(epath, "negative weight");
      const double bound = std::min(job.components[a].tolerable_time,
                                    job.components[b].tolerable_time);
      if (edge.weight > bound + kTolerance) {
        sink.add(epath, "weight exceeds the smaller tolerable time of its endpoints");
      }
    }
  }
}

void check_sps(const Scenario& s, ViolationSink& sink) {
  const double max_demand = s.max_tolerable_time();
  for (int m = 0; m < static_cast<int>(s.sps.size()); ++m) {
    const ServiceProvider& sp = s.sps[m];
    const std::string path = "sps[" + std::to_string(m) + "]";
    if (sp.index != m) sink.add(path, "index does not match position");
    if (sp.vms.empty()) sink.add(path, "service provider has no VMs");
    for (int y = 0; y < static_cast<int>(sp.vms.size()); ++y) {
      const VirtualMachine& vm = sp.vms[y];
      const std::string vpath = path + ".vms[" + std::to_string(y) + "]";
      if (!(vm.base_time > 0.0)) {
        sink.add(vpath, "base_time must be positive");
        continue;
      }
      if (vm.max_rank != max_rank_for(vm.base_time, max_demand)) {
        sink.add(vpath, "max_rank is not floor(max demand / base_time)");
      }
      if (vm.max_rank * vm.base_time > max_demand + kTolerance) {
        sink.add(vpath, "max_rank * base_time exceeds the maximum demand");
      }
    }
  }
}

void check_graph(const Scenario& s, ViolationSink& sink) {
  const std::size_t m = s.sps.size();
  if (s.contact_rate.size() != m) {
    sink.add("contact_rate", "matrix size does not match SP count");
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      if (s.contact_rate[i].size() != m) {
        sink.add("contact_rate[" + std::to_string(i) + "]", "row has wrong length");
        continue;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m && s.contact_rate[i].size() == m; ++j) {
        const double v = s.contact_rate[i][j];
        const std::string cell = "contact_rate[" + std::to_string(i) + "][" +
                                 std::to_string(j) + "]";
        if (!(v >= 0.0)) sink.add(cell, "rate must be non-negative");
        if (i == j && v != 0.0) sink.add(cell, "diagonal must be zero");
        if (j > i && s.contact_rate[j].size() == m && v != s.contact_rate[j][i]) {
          sink.add(cell, "matrix is not symmetric");
        }
      }
    }
  }
  if (s.coverage.size() != s.jobs.size()) {
    sink.add("coverage", "one coverage set per job is required");
  }
  for (std::size_t n = 0; n < s.coverage.size(); ++n) {
    const std::string path = "coverage[" + std::to_string(n) + "]";
    if (s.coverage[n].empty()) sink.add(path, "job " + std::to_string(n) + " reaches no SP");
    std::set<int> seen;
    for (int sp : s.coverage[n]) {
      if (sp < 0 || sp >= static_cast<int>(m)) sink.add(path, "unknown SP " + std::to_string(sp));
      if (!seen.insert(sp).second) sink.add(path, "duplicate SP " + std::to_string(sp));
    }
  }
  if (!(s.epsilon > 0.0 && s.epsilon <= 1.0)) {
    sink.add("epsilon", "threshold must lie in (0, 1]");
  }
}

void check_sellers(const Scenario& s, ViolationSink& sink) {
  const ValuationConfig& v = s.valuation;
  if (!(v.beta1 > 0.0)) sink.add("valuation.beta1", "must be positive");
  if (!(v.beta2 > 0.0)) sink.add("valuation.beta2", "must be positive");
  if (!(v.price_scale > 0.0)) sink.add("valuation.price_scale", "must be positive");

  const double max_demand = s.max_tolerable_time();
  if (!(max_demand > 0.0)) return;
  bool bad_vm = false;
  for (const auto& sp : s.sps) {
    for (const auto& vm : sp.vms) bad_vm |= !(vm.base_time > 0.0);
  }
  if (bad_vm) return;
  const std::vector<Seller> expected = expand_vms(s.sps, max_demand);
  if (expected.size() != s.sellers.size()) {
    sink.add("sellers", "seller list is not the VM expansion (" +
                            std::to_string(s.sellers.size()) + " vs " +
                            std::to_string(expected.size()) + ")");
    return;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const Seller& got = s.sellers[i];
    const std::string path = "sellers[" + std::to_string(i) + "]";
    if (got.id != expected[i].id) {
      sink.add(path, "expected " + to_string(expected[i].id) + ", found " +
                         to_string(got.id));
      continue;
    }
    if (got.capability != expected[i].capability) {
      sink.add(path, "capability is not rank * base_time");
    }
    if (!(got.bid > 0.0)) sink.add(path, "bid must be positive");
    if (!(got.true_value > 0.0)) sink.add(path, "true_value must be positive");
  }
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  ViolationSink sink;
  check_jobs(s, sink);
  check_sps(s, sink);
  check_graph(s, sink);
  check_sellers(s, sink);
  return sink.take();
}

}  // namespace vcauction

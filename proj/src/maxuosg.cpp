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
#include <cmath>

namespace vcauction {

const char* to_string(MatchAction action) {
  switch (action) {
    case MatchAction::kAccept:
      return "accept";
    case MatchAction::kReject:
      return "reject";
    case MatchAction::kRemove:
      return "remove";
    case MatchAction::kRestart:
      return "restart";
  }
  return "unknown";
}

const char* to_string(BidClass c) {
  switch (c) {
    case BidClass::kNoGain:
      return "no-gain";
    case BidClass::kEqual:
      return "equal";
    case BidClass::kRiskLoss:
      return "risk-loss";
    case BidClass::kRiskZero:
      return "risk-zero";
    case BidClass::kGain:
      return "gain";
  }
  return "unknown";
}

namespace {

BuyerPrefList buyer_list_from_market(const Market& m, const Scenario& s, int b,
                                     const MaxUosgConfig& cfg) {
  BuyerPrefList list;
  list.buyer = m.buyer_id(b);
  std::vector<int> sellers;
  for (int k = 0; k < m.seller_count(); ++k) {
    if (m.pair_ok(b, k)) sellers.push_back(k);
  }
  // Seller indices are in id order, so a stable sort breaks ties by id.
  std::stable_sort(sellers.begin(), sellers.end(),
                   [&](int x, int y) { return m.value(b, x) > m.value(b, y); });
  if (cfg.top_k && static_cast<int>(sellers.size()) > *cfg.top_k) {
    sellers.resize(std::max(*cfg.top_k, 0));
  }
  for (int k : sellers) {
    PrefEntry e;
    e.index = static_cast<int>(list.entries.size());
    e.buyer = list.buyer;
    e.seller = m.seller_id(k);
    e.value = m.value(b, k);
    e.service_value = m.service_value(b, k);
    e.bid = s.sellers[k].bid;
    list.entries.push_back(e);
  }
  PrefEntry critical;
  critical.index = static_cast<int>(list.entries.size());
  critical.buyer = list.buyer;
  critical.value =
      (list.entries.empty() ? 0.0 : list.entries.back().value) - cfg.delta;
  list.entries.push_back(critical);
  return list;
}

}  // namespace

BuyerPrefList build_buyer_list(const Scenario& s, const BuyerId& b,
                               const MaxUosgConfig& cfg) {
  Market m(s);
  return buyer_list_from_market(m, s, m.buyer_index(b), cfg);
}

std::vector<BuyerPrefList> build_buyer_lists(const Scenario& s,
                                             const MaxUosgConfig& cfg) {
  Market m(s);
  std::vector<BuyerPrefList> out;
  out.reserve(m.buyer_count());
  for (int b = 0; b < m.buyer_count(); ++b) {
    out.push_back(buyer_list_from_market(m, s, b, cfg));
  }
  return out;
}

BrokerPrefList build_broker_list(const std::vector<BuyerPrefList>& lists) {
  BrokerPrefList broker;
  for (const auto& list : lists) {
    for (const auto& e : list.entries) {
      if (!e.is_virtual()) broker.entries.push_back(e);
    }
  }
  std::sort(broker.entries.begin(), broker.entries.end(),
            [](const PrefEntry& a, const PrefEntry& b) {
              if (a.value != b.value) return a.value > b.value;
              if (a.buyer != b.buyer) return a.buyer < b.buyer;
              return *a.seller < *b.seller;
            });
  for (std::size_t i = 0; i < broker.entries.size(); ++i) {
    broker.entries[i].index = static_cast<int>(i);
  }
  return broker;
}

std::size_t step_budget(std::size_t list_length, std::size_t buyers) {
  if (list_length < buyers) return list_length;
  return (list_length - buyers) * buyers + list_length;
}

namespace {

MatchResult match_in(const Market& m, const BrokerPrefList& broker,
                     const MaxUosgConfig& cfg) {
  const int buyers = m.buyer_count();
  const int length = static_cast<int>(broker.entries.size());
  MatchResult result;
  if (buyers == 0) {
    result.success = true;
    return result;
  }
  if (length < buyers) return result;

  std::vector<int> entry_buyer(length), entry_seller(length);
  for (int i = 0; i < length; ++i) {
    entry_buyer[i] = m.buyer_index(broker.entries[i].buyer);
    entry_seller[i] = m.seller_index(*broker.entries[i].seller);
  }
  const std::size_t budget = cfg.bound_steps
                                 ? step_budget(length, buyers)
                                 : static_cast<std::size_t>(-1);

  std::vector<int> seller_of_buyer(buyers, -1);
  std::vector<char> seller_used(m.seller_count(), 0);
  std::vector<int> stack;  // accepted broker positions, in acceptance order

  auto accept = [&](int pos) {
    seller_of_buyer[entry_buyer[pos]] = entry_seller[pos];
    seller_used[entry_seller[pos]] = 1;
    stack.push_back(pos);
    result.trace.push_back({pos, MatchAction::kAccept});
  };
  auto drop_last = [&]() {
    const int pos = stack.back();
    stack.pop_back();
    seller_of_buyer[entry_buyer[pos]] = -1;
    seller_used[entry_seller[pos]] = 0;
    result.trace.push_back({pos, MatchAction::kRemove});
    return pos;
  };

  int anchor = 0;
  result.steps = 1;
  accept(anchor);
  int pos = anchor + 1;
  while (true) {
    for (; pos < length && static_cast<int>(stack.size()) < buyers; ++pos) {
      if (result.steps >= budget) {
        result.budget_exhausted = true;
        return result;
      }
      ++result.steps;
      const int b = entry_buyer[pos];
      const int k = entry_seller[pos];
      if (seller_of_buyer[b] < 0 && !seller_used[k] &&
          m.compatible(b, k, seller_of_buyer)) {
        accept(pos);
      } else {
        result.trace.push_back({pos, MatchAction::kReject});
      }
    }
    if (static_cast<int>(stack.size()) == buyers) break;
    if (stack.size() == 1) {
      // Only the anchor survived: restart from the next list position.
      drop_last();
      if (++anchor >= length || result.steps >= budget) {
        result.budget_exhausted = anchor < length;
        return result;
      }
      ++result.steps;
      result.trace.push_back({anchor, MatchAction::kRestart});
      accept(anchor);
      pos = anchor + 1;
    } else {
      pos = drop_last() + 1;
    }
  }
  result.success = true;
  result.assignment = m.to_assignment(seller_of_buyer);
  return result;
}

}  // namespace

MatchResult match(const Scenario& s, const BrokerPrefList& broker,
                  const MaxUosgConfig& cfg) {
  return match_in(Market(s), broker, cfg);
}

double payment_maxuosg(const std::vector<BuyerPrefList>& lists,
                       const Assignment& a, const SellerId& winner) {
  const auto buyer = a.buyer_of(winner);
  if (!buyer) throw AuctionError("seller " + to_string(winner) + " did not win");
  auto list = std::find_if(lists.begin(), lists.end(),
                           [&](const BuyerPrefList& l) { return l.buyer == *buyer; });
  if (list == lists.end()) {
    throw AuctionError("no preference list for " + to_string(*buyer));
  }
  const auto& entries = list->entries;
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (entries[i].seller == winner) {
      return entries[i].service_value - entries[i + 1].value;
    }
  }
  throw AuctionError("seller " + to_string(winner) + " missing from the list of " +
                     to_string(*buyer));
}

MaxUosgOutcome run_maxuosg(const Scenario& s, const MaxUosgConfig& cfg) {
  MaxUosgOutcome out;
  const Market m(s);
  out.buyer_lists.reserve(m.buyer_count());
  for (int b = 0; b < m.buyer_count(); ++b) {
    out.buyer_lists.push_back(buyer_list_from_market(m, s, b, cfg));
  }
  out.broker_list = build_broker_list(out.buyer_lists);
  MatchResult r = match_in(m, out.broker_list, cfg);
  out.match_trace = std::move(r.trace);
  out.steps = r.steps;
  if (!r.success) return out;
  out.success = true;
  out.assignment = std::move(r.assignment);
  out.objective_value = objective(s, out.assignment);
  for (const auto& p : out.assignment.pairs()) {
    out.payments[p.seller] = payment_maxuosg(out.buyer_lists, out.assignment, p.seller);
  }
  return out;
}

namespace {

bool same_ranking(const MaxUosgOutcome& a, const MaxUosgOutcome& b) {
  const auto& x = a.broker_list.entries;
  const auto& y = b.broker_list.entries;
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].buyer != y[i].buyer || x[i].seller != y[i].seller) return false;
  }
  for (std::size_t i = 0; i < a.buyer_lists.size(); ++i) {
    if (a.buyer_lists[i].entries.back().value != b.buyer_lists[i].entries.back().value) {
      return false;
    }
  }
  return true;
}

}  // namespace

MaxUosgTruthReport verify_truthfulness_maxuosg(const Scenario& s,
                                               const SellerId& seller,
                                               const std::vector<double>& bid_grid,
                                               const MaxUosgConfig& cfg) {
  MaxUosgTruthReport report;
  report.seller = seller;
  report.true_value = s.seller(seller).true_value;

  Scenario truthful = s;
  truthful.seller(seller).bid = report.true_value;
  const MaxUosgOutcome base = run_maxuosg(truthful, cfg);
  if (base.success) {
    auto it = base.payments.find(seller);
    if (it != base.payments.end()) report.truthful_utility = it->second - report.true_value;
  }

  for (double bid : bid_grid) {
    Scenario copy = s;
    copy.seller(seller).bid = bid;
    const MaxUosgOutcome o = run_maxuosg(copy, cfg);
    MaxUosgProbe p;
    p.bid = bid;
    if (o.success) {
      auto it = o.payments.find(seller);
      if (it != o.payments.end()) {
        p.won = true;
        p.payment = it->second;
        p.utility = p.payment - report.true_value;
      }
    }
    p.order_preserved = same_ranking(base, o);
    const double u = report.truthful_utility;
    if (std::abs(p.utility - u) <= kTolerance) {
      p.classification = BidClass::kEqual;
    } else if (p.utility > u) {
      p.classification = BidClass::kGain;
    } else if (!p.won) {
      p.classification = BidClass::kRiskZero;
    } else if (p.utility < 0.0) {
      p.classification = BidClass::kRiskLoss;
    } else {
      p.classification = BidClass::kNoGain;
    }
    if (p.classification == BidClass::kGain) {
      ++report.gains;
      if (p.order_preserved) ++report.order_preserved_gains;
    }
    report.probes.push_back(p);
  }
  return report;
}

}  // namespace vcauction

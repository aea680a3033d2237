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
#include <climits>
#include <cmath>
#include <numeric>

namespace vcauction {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTruncated:
      return "truncated";
  }
  return "unknown";
}

namespace {

struct DeadlineExceeded {};

// Unmatched buyers sort after every seller, so for complete assignments this
// is the lexicographic order of the (buyer, seller) pair lists.
bool lex_less(std::span<const int> a, std::span<const int> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int x = a[i] < 0 ? INT_MAX : a[i];
    const int y = b[i] < 0 ? INT_MAX : b[i];
    if (x != y) return x < y;
  }
  return false;
}

// Eligibility of (buyer, seller) under the options, ignoring one-to-one and
// structure constraints.
bool eligible(const Market& m, const SolveOptions& o, int b, int s) {
  if (o.excluded_seller && *o.excluded_seller == s) return false;
  if (o.forced_pair) {
    const auto [fb, fs] = *o.forced_pair;
    if (b == fb) return s == fs && m.reachable(b, s);
    if (s == fs) return false;
  }
  return m.pair_ok(b, s);
}

double pair_value(const Market& m, const SolveOptions& o, int b, int s) {
  if (o.forced_pair && o.forced_pair->first == b) return 0.0;
  return m.value(b, s);
}

void check_forced(const Market& m, const SolveOptions& o) {
  if (!o.forced_pair) return;
  const auto [fb, fs] = *o.forced_pair;
  if (fb < 0 || fb >= m.buyer_count() || fs < 0 || fs >= m.seller_count()) {
    throw std::invalid_argument("forced pair out of range");
  }
}

class Incumbent {
 public:
  explicit Incumbent(int buyers) : best_(buyers, -1) {}

  bool found() const { return found_; }
  double value() const { return value_; }
  const std::vector<int>& assignment() const { return best_; }

  void offer(std::span<const int> candidate, double value) {
    if (!found_ || value > value_ + kTolerance ||
        (value >= value_ - kTolerance && lex_less(candidate, best_))) {
      found_ = true;
      value_ = value;
      best_.assign(candidate.begin(), candidate.end());
    }
  }

 private:
  bool found_ = false;
  double value_ = 0.0;
  std::vector<int> best_;
};

class DepthFirstSearch {
 public:
  DepthFirstSearch(const Market& market, const SolveOptions& options)
      : m_(market),
        o_(options),
        n_(market.buyer_count()),
        assign_(n_, -1),
        used_(market.seller_count(), 0),
        candidates_(n_),
        incumbent_(n_) {
    for (int b = 0; b < n_; ++b) {
      for (int s = 0; s < m_.seller_count(); ++s) {
        if (eligible(m_, o_, b, s)) candidates_[b].push_back(s);
      }
      std::stable_sort(candidates_[b].begin(), candidates_[b].end(),
                       [&](int x, int y) {
                         return pair_value(m_, o_, b, x) > pair_value(m_, o_, b, y);
                       });
    }
  }

  SolveResult run() {
    SolveResult result;
    if (o_.require_complete) {
      for (int b = 0; b < n_; ++b) {
        if (candidates_[b].empty()) {
          result.status = SolveStatus::kInfeasible;
          return result;
        }
      }
    }
    visit(0, 0.0);
    result.explored = explored_;
    if (truncated_) {
      result.status = SolveStatus::kTruncated;
    } else if (incumbent_.found()) {
      result.status = SolveStatus::kOptimal;
    }
    if (incumbent_.found()) {
      result.seller_of_buyer = incumbent_.assignment();
      result.objective = m_.objective(result.seller_of_buyer);
      if (o_.forced_pair) {
        result.objective -= m_.value(o_.forced_pair->first, o_.forced_pair->second);
      }
    }
    return result;
  }

 private:
  // Sum over buyers >= depth of the best value still available to each of
  // them; nullopt when a buyer that must be matched has nothing left.
  std::optional<double> remaining_bound(int depth) const {
    double total = 0.0;
    for (int b = depth; b < n_; ++b) {
      // Candidates are sorted by value, so the first free one is the best.
      auto it = std::find_if(candidates_[b].begin(), candidates_[b].end(),
                             [&](int s) { return !used_[s]; });
      if (it == candidates_[b].end()) {
        if (o_.require_complete) return std::nullopt;
        continue;
      }
      const double v = pair_value(m_, o_, b, *it);
      total += o_.require_complete ? v : std::max(v, 0.0);
    }
    return total;
  }

  bool prefix_not_smaller(int depth) const {
    const auto& best = incumbent_.assignment();
    for (int b = 0; b < depth; ++b) {
      const int x = assign_[b] < 0 ? INT_MAX : assign_[b];
      const int y = best[b] < 0 ? INT_MAX : best[b];
      if (x != y) return x > y;
    }
    return true;
  }

  void visit(int depth, double value) {
    if (truncated_) return;
    ++explored_;
    if (o_.deadline && (explored_ & 1023) == 0 && Clock::now() > *o_.deadline) {
      truncated_ = true;
      return;
    }
    if (depth == n_) {
      incumbent_.offer(assign_, value);
      return;
    }
    auto rest = remaining_bound(depth);
    if (!rest) return;
    if (incumbent_.found()) {
      const double bound = value + *rest;
      if (bound < incumbent_.value() - kTolerance) return;
      if (bound <= incumbent_.value() + kTolerance && prefix_not_smaller(depth)) {
        return;
      }
    }
    for (int s : candidates_[depth]) {
      if (used_[s]) continue;
      if (!m_.compatible(depth, s, assign_)) continue;
      assign_[depth] = s;
      used_[s] = 1;
      visit(depth + 1, value + pair_value(m_, o_, depth, s));
      used_[s] = 0;
      assign_[depth] = -1;
      if (truncated_) return;
    }
    if (!o_.require_complete && !(o_.forced_pair && o_.forced_pair->first == depth)) {
      visit(depth + 1, value);
    }
  }

  const Market& m_;
  const SolveOptions& o_;
  int n_;
  std::vector<int> assign_;
  std::vector<char> used_;
  std::vector<std::vector<int>> candidates_;
  Incumbent incumbent_;
  std::uint64_t explored_ = 0;
  bool truncated_ = false;
};

}  // namespace

std::uint64_t naive_candidate_count(int buyers, int sellers) {
  if (buyers < 0 || sellers < 0) return 0;
  if (buyers > sellers) return 0;
  std::uint64_t perms = 1;
  for (int i = 2; i <= buyers; ++i) perms *= static_cast<std::uint64_t>(i);
  std::uint64_t choose = 1;
  for (int i = 1; i <= buyers; ++i) {
    choose = choose * static_cast<std::uint64_t>(sellers - buyers + i) / i;
  }
  return perms * choose;
}

SolveResult solve_naive(const Market& market, const SolveOptions& options) {
  if (!options.require_complete) {
    throw std::invalid_argument("exhaustive enumeration only covers complete allocations");
  }
  check_forced(market, options);
  const int b = market.buyer_count();
  const int s = market.seller_count();
  SolveResult result;
  Incumbent incumbent(b);
  if (b > s) return result;

  std::vector<int> order(b);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> assign(b, -1);
  bool truncated = false;

  do {
    std::vector<int> subset(b);
    std::iota(subset.begin(), subset.end(), 0);
    while (true) {
      ++result.explored;
      if (options.deadline && (result.explored & 4095) == 0 &&
          Clock::now() > *options.deadline) {
        truncated = true;
        break;
      }
      for (int k = 0; k < b; ++k) assign[order[k]] = subset[k];
      bool feasible = true;
      double value = 0.0;
      for (int k = 0; k < b && feasible; ++k) {
        const int buyer = order[k];
        const int seller = subset[k];
        if (!eligible(market, options, buyer, seller) ||
            !market.compatible(buyer, seller, assign)) {
          feasible = false;
          break;
        }
        value += pair_value(market, options, buyer, seller);
      }
      if (feasible) incumbent.offer(assign, value);

      // Next b-combination of {0..s-1} in lexicographic order.
      int i = b - 1;
      while (i >= 0 && subset[i] == s - b + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < b; ++j) subset[j] = subset[j - 1] + 1;
    }
  } while (!truncated && std::next_permutation(order.begin(), order.end()));

  if (truncated) {
    result.status = SolveStatus::kTruncated;
  } else if (incumbent.found()) {
    result.status = SolveStatus::kOptimal;
  }
  if (incumbent.found()) {
    result.seller_of_buyer = incumbent.assignment();
    result.objective = market.objective(result.seller_of_buyer);
    if (options.forced_pair) {
      result.objective -=
          market.value(options.forced_pair->first, options.forced_pair->second);
    }
  }
  return result;
}

SolveResult solve_optimal(const Market& market, const SolveOptions& options) {
  check_forced(market, options);
  DepthFirstSearch search(market, options);
  return search.run();
}

namespace {

std::optional<std::pair<Assignment, double>> wrap(const Market& m,
                                                  const SolveResult& r) {
  if (!r.ok()) return std::nullopt;
  return std::make_pair(m.to_assignment(r.seller_of_buyer), r.objective);
}

}  // namespace

std::optional<std::pair<Assignment, double>> solve_naive(const Scenario& s) {
  Market m(s);
  return wrap(m, solve_naive(m));
}

std::optional<std::pair<Assignment, double>> solve_optimal(const Scenario& s) {
  Market m(s);
  return wrap(m, solve_optimal(m));
}

double welfare_without(const Market& market, int seller,
                       std::optional<Clock::time_point> deadline) {
  SolveOptions without;
  without.excluded_seller = seller;
  without.deadline = deadline;
  const SolveResult r = solve_optimal(market, without);
  if (r.status == SolveStatus::kTruncated) throw DeadlineExceeded();
  if (r.ok()) return r.objective;

  // Pivotal seller. Walk the buyers it can serve from the highest service
  // value down; the first value level admitting a complete allocation is the
  // highest bid at which the seller still wins.
  std::vector<int> reach;
  for (int b = 0; b < market.buyer_count(); ++b) {
    if (market.reachable(b, seller) && market.service_value(b, seller) > kTolerance) {
      reach.push_back(b);
    }
  }
  std::stable_sort(reach.begin(), reach.end(), [&](int x, int y) {
    return market.service_value(x, seller) > market.service_value(y, seller);
  });
  std::size_t i = 0;
  while (i < reach.size()) {
    const double level = market.service_value(reach[i], seller);
    std::optional<double> best;
    for (; i < reach.size() &&
           market.service_value(reach[i], seller) >= level - kTolerance;
         ++i) {
      SolveOptions pinned;
      pinned.forced_pair = std::make_pair(reach[i], seller);
      pinned.deadline = deadline;
      const SolveResult f = solve_optimal(market, pinned);
      if (f.status == SolveStatus::kTruncated) throw DeadlineExceeded();
      if (f.ok() && (!best || f.objective > *best)) best = f.objective;
    }
    if (best) return *best;
  }
  return 0.0;
}

double vcg_payment(const Scenario& s, const Assignment& k_star, double f_star,
                   const SellerId& seller) {
  if (!k_star.has_seller(seller)) {
    throw AuctionError("seller " + to_string(seller) + " is not a winner");
  }
  Market market(s);
  const double without = welfare_without(market, market.seller_index(seller));
  return f_star - without + s.seller(seller).bid;
}

OptOutcome run_optimal_mechanism(const Scenario& s,
                                 std::optional<Clock::time_point> deadline) {
  OptOutcome out;
  Market market(s);
  SolveOptions options;
  options.deadline = deadline;
  const SolveResult r = solve_optimal(market, options);
  out.explored_nodes = r.explored;
  if (r.status == SolveStatus::kTruncated) {
    out.truncated = true;
    return out;
  }
  if (!r.ok()) return out;
  out.assignment = market.to_assignment(r.seller_of_buyer);
  out.objective_value = r.objective;
  try {
    for (const auto& p : out.assignment.pairs()) {
      const int k = market.seller_index(p.seller);
      out.payments[p.seller] = out.objective_value -
                               welfare_without(market, k, deadline) +
                               s.seller(p.seller).bid;
    }
  } catch (const DeadlineExceeded&) {
    out.truncated = true;
    out.payments.clear();
    return out;
  }
  out.success = true;
  return out;
}

std::vector<double> default_bid_grid(double true_value) {
  std::vector<double> grid;
  grid.reserve(21);
  for (int k = 0; k <= 20; ++k) grid.push_back(true_value * (0.5 + k / 20.0));
  return grid;
}

TruthfulnessReport verify_truthfulness_opt(const Scenario& s,
                                           const SellerId& seller,
                                           const std::vector<double>& bid_grid) {
  TruthfulnessReport report;
  report.seller = seller;
  report.true_value = s.seller(seller).true_value;

  auto probe = [&](double bid) {
    Scenario copy = s;
    copy.seller(seller).bid = bid;
    const OptOutcome o = run_optimal_mechanism(copy);
    BidProbe p;
    p.bid = bid;
    auto it = o.payments.find(seller);
    if (o.success && it != o.payments.end()) {
      p.won = true;
      p.payment = it->second;
      p.utility = p.payment - report.true_value;
    }
    return p;
  };

  report.truthful_utility = probe(report.true_value).utility;
  for (double bid : bid_grid) {
    BidProbe p = probe(bid);
    p.beats_truthful = p.utility > report.truthful_utility + kTolerance;
    if (p.beats_truthful) ++report.violations;
    report.probes.push_back(p);
  }
  return report;
}

}  // namespace vcauction

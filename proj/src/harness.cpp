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


#include "vcauction/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "vcauction/economics.hpp"

namespace vcauction {

const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::kOpt:
      return "opt";
    case Mechanism::kMaxUosg:
      return "maxuosg";
    case Mechanism::kEtpm:
      return "etpm";
    case Mechanism::kLpm:
      return "lpm";
    case Mechanism::kRmm:
      return "rmm";
  }
  return "unknown";
}

std::optional<Mechanism> parse_mechanism(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (Mechanism m : all_mechanisms()) {
    if (lower == to_string(m)) return m;
  }
  return std::nullopt;
}

std::vector<Mechanism> all_mechanisms() {
  return {Mechanism::kOpt, Mechanism::kMaxUosg, Mechanism::kEtpm, Mechanism::kLpm,
          Mechanism::kRmm};
}

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Clock::time_point deadline_after(double secs) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(secs));
}

BaselineKind baseline_of(Mechanism m) {
  switch (m) {
    case Mechanism::kEtpm:
      return BaselineKind::kEtpm;
    case Mechanism::kLpm:
      return BaselineKind::kLpm;
    default:
      return BaselineKind::kRmm;
  }
}

}  // namespace

MechanismRun run_mechanism(const Scenario& s, Mechanism m, std::uint64_t seed,
                           double budget_secs) {
  MechanismRun run;
  run.mechanism = m;
  const auto start = Clock::now();
  switch (m) {
    case Mechanism::kOpt: {
      OptOutcome o = run_optimal_mechanism(s, deadline_after(budget_secs));
      run.success = o.success;
      run.truncated = o.truncated;
      run.work = o.explored_nodes;
      if (o.success) {
        run.assignment = std::move(o.assignment);
        run.objective_value = o.objective_value;
        run.payments = std::move(o.payments);
      }
      break;
    }
    case Mechanism::kMaxUosg: {
      MaxUosgOutcome o = run_maxuosg(s);
      run.success = o.success;
      run.work = o.steps;
      run.match_trace = std::move(o.match_trace);
      if (o.success) {
        run.assignment = std::move(o.assignment);
        run.objective_value = o.objective_value;
        run.payments = std::move(o.payments);
      }
      break;
    }
    default: {
      BaselineOutcome o = run_baseline(s, baseline_of(m), seed);
      run.success = o.success;
      run.work = static_cast<std::uint64_t>(o.attempts);
      if (o.success) {
        run.assignment = std::move(o.assignment);
        run.objective_value = o.objective_value;
        for (const auto& p : run.assignment.pairs()) {
          run.payments[p.seller] = s.seller(p.seller).bid;
        }
      }
      break;
    }
  }
  run.runtime_secs = seconds_since(start);
  if (run.success && !assignment_feasible(s, run.assignment, true)) {
    throw AuctionError(std::string(to_string(m)) + " produced an infeasible assignment");
  }
  return run;
}

Json to_json_doc(const MechanismRun& r) {
  Json payments = Json::array();
  for (const auto& [seller, price] : r.payments) {
    payments.push_back({{"seller", seller}, {"payment", price}});
  }
  Json trace = Json::array();
  for (const auto& e : r.match_trace) {
    trace.push_back({{"position", e.position}, {"action", to_string(e.action)}});
  }
  Json j = {{"mechanism", to_string(r.mechanism)},
            {"success", r.success},
            {"truncated", r.truncated},
            {"assignment", r.assignment},
            {"objective", r.objective_value},
            {"payments", payments},
            {"runtime_secs", r.runtime_secs},
            {"work", r.work}};
  if (!r.match_trace.empty()) j["match_trace"] = trace;
  return j;
}

int recheck_maxuosg_payments(const Json& buyer_lists, const Assignment& a,
                             const std::map<SellerId, double>& payments) {
  const auto lists = buyer_lists.get<std::vector<BuyerPrefList>>();
  int mismatches = 0;
  for (const auto& p : a.pairs()) {
    std::optional<double> expected;
    for (const auto& list : lists) {
      if (list.buyer != p.buyer) continue;
      for (std::size_t i = 0; i + 1 < list.entries.size(); ++i) {
        if (list.entries[i].seller == p.seller) {
          expected = list.entries[i].service_value - list.entries[i + 1].value;
        }
      }
    }
    auto it = payments.find(p.seller);
    if (!expected || it == payments.end() || std::abs(it->second - *expected) > kTolerance) {
      ++mismatches;
    }
  }
  if (payments.size() != a.size()) ++mismatches;
  return mismatches;
}

VerifyReport verify(const Scenario& s, Mechanism m, bool sweep, double budget_secs) {
  VerifyReport report;
  report.mechanism = m;
  const MechanismRun run = run_mechanism(s, m, s.seed, budget_secs);
  report.success = run.success;
  report.truncated = run.truncated;
  if (!run.success) return report;

  for (const auto& p : run.assignment.pairs()) {
    const Seller& seller = s.seller(p.seller);
    WinnerAudit w;
    w.seller = p.seller;
    w.buyer = p.buyer;
    w.bid = seller.bid;
    w.true_value = seller.true_value;
    w.payment = run.payments.at(p.seller);
    w.utility = w.payment - w.true_value;
    w.rational = w.payment >= w.bid - kTolerance && w.utility >= -kTolerance;
    if (!w.rational) ++report.ir_violations;
    report.vm_utility[{p.seller.sp, p.seller.vm}] += w.utility;
    report.sp_utility[p.seller.sp] += w.utility;
    report.winners.push_back(w);
  }
  for (const auto& [vm, u] : report.vm_utility) {
    if (u < -kTolerance) ++report.ir_violations;
  }
  for (const auto& [sp, u] : report.sp_utility) {
    if (u < -kTolerance) ++report.ir_violations;
  }

  if (m == Mechanism::kMaxUosg) {
    const MaxUosgOutcome o = run_maxuosg(s);
    report.payment_mismatches =
        recheck_maxuosg_payments(Json::parse(Json(o.buyer_lists).dump()), run.assignment,
                                 run.payments);
  }

  if (!sweep || (m != Mechanism::kOpt && m != Mechanism::kMaxUosg)) return report;
  for (const auto& w : report.winners) {
    const auto grid = default_bid_grid(w.true_value);
    if (m == Mechanism::kOpt) {
      const TruthfulnessReport t = verify_truthfulness_opt(s, w.seller, grid);
      report.truth_violations += t.violations;
      for (const auto& p : t.probes) {
        const bool gain = p.beats_truthful;
        if (gain) ++report.gains;
        const char* cls = gain ? "gain"
                          : std::abs(p.utility - t.truthful_utility) <= kTolerance
                              ? "equal"
                          : !p.won ? "risk-zero"
                          : p.utility < 0.0 ? "risk-loss"
                                            : "no-gain";
        report.sweep.push_back({w.seller, p.bid, p.won, p.payment, p.utility, cls, false});
      }
    } else {
      const MaxUosgTruthReport t = verify_truthfulness_maxuosg(s, w.seller, grid);
      report.truth_violations += t.order_preserved_gains;
      report.gains += t.gains;
      for (const auto& p : t.probes) {
        report.sweep.push_back({w.seller, p.bid, p.won, p.payment, p.utility,
                                to_string(p.classification), p.order_preserved});
      }
    }
  }
  return report;
}

Json to_json_doc(const VerifyReport& r) {
  Json winners = Json::array();
  for (const auto& w : r.winners) {
    winners.push_back({{"seller", w.seller},
                       {"buyer", w.buyer},
                       {"bid", w.bid},
                       {"true_value", w.true_value},
                       {"payment", w.payment},
                       {"utility", w.utility},
                       {"rational", w.rational}});
  }
  Json vms = Json::array();
  for (const auto& [vm, u] : r.vm_utility) {
    vms.push_back({{"sp", vm.first}, {"vm", vm.second}, {"utility", u}});
  }
  Json sps = Json::array();
  for (const auto& [sp, u] : r.sp_utility) sps.push_back({{"sp", sp}, {"utility", u}});
  return {{"mechanism", to_string(r.mechanism)},
          {"success", r.success},
          {"truncated", r.truncated},
          {"winners", winners},
          {"vm_utility", vms},
          {"sp_utility", sps},
          {"ir_violations", r.ir_violations},
          {"truth_violations", r.truth_violations},
          {"payment_mismatches", r.payment_mismatches},
          {"gains", r.gains},
          {"sweep_rows", r.sweep.size()},
          {"ok", r.ok()}};
}

std::string sweep_csv(const VerifyReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "seller,bid,won,payment,utility,classification,order_preserved\n";
  for (const auto& row : r.sweep) {
    out << to_string(row.seller) << ',' << row.bid << ',' << row.won << ',' << row.payment
        << ',' << row.utility << ',' << row.classification << ',' << row.order_preserved
        << '\n';
  }
  return out.str();
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw AuctionError("trials must be at least 1");
  ExperimentReport report;
  report.config = cfg;
  double ratio_sum = 0.0;
  int ratio_count = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    GenConfig gen = cfg.gen;
    gen.seed = cfg.seed + static_cast<std::uint64_t>(t);
    const Scenario s = generate(gen);
    TrialRow row;
    row.trial = t;
    row.seed = gen.seed;
    row.digest = scenario_digest(s);
    row.buyers = s.buyer_count();
    row.sellers = static_cast<int>(s.sellers.size());
    for (Mechanism m : all_mechanisms()) {
      if (m == Mechanism::kOpt && row.buyers > cfg.opt_buyer_cutoff) continue;
      row.runs[m] = run_mechanism(s, m, gen.seed, cfg.budget_secs);
    }
    if (auto opt = row.runs.find(Mechanism::kOpt);
        opt != row.runs.end() && opt->second.success) {
      const auto& mx = row.runs.at(Mechanism::kMaxUosg);
      if (mx.success && mx.objective_value > opt->second.objective_value + 1e-9) {
        ++report.opt_dominated;
      }
      if (opt->second.objective_value > kTolerance) {
        ratio_sum += mx.success ? mx.objective_value / opt->second.objective_value : 0.0;
        ++ratio_count;
      }
    }
    report.trials.push_back(std::move(row));
  }

  for (const auto& row : report.trials) {
    for (const auto& [m, run] : row.runs) {
      auto& sum = report.summary[m];
      ++sum.runs;
      sum.mean_runtime += run.runtime_secs;
      sum.max_runtime = std::max(sum.max_runtime, run.runtime_secs);
      if (run.success) {
        ++sum.successes;
        sum.mean_objective += run.objective_value;
      }
    }
  }
  for (auto& [m, sum] : report.summary) {
    if (sum.successes > 0) sum.mean_objective /= sum.successes;
    if (sum.runs > 0) sum.mean_runtime /= sum.runs;
  }
  for (Mechanism b : {Mechanism::kEtpm, Mechanism::kLpm, Mechanism::kRmm}) {
    double ours = 0.0, theirs = 0.0;
    int both = 0;
    for (const auto& row : report.trials) {
      const auto& mx = row.runs.at(Mechanism::kMaxUosg);
      const auto& bl = row.runs.at(b);
      if (!mx.success || !bl.success) continue;
      ours += mx.objective_value;
      theirs += bl.objective_value;
      ++both;
    }
    if (both > 0 && theirs > 0.0) report.improvement[b] = (ours - theirs) / theirs;
  }
  if (ratio_count > 0) report.opt_ratio = ratio_sum / ratio_count;
  return report;
}

Json to_json_doc(const ExperimentReport& r) {
  Json trials = Json::array();
  for (const auto& row : r.trials) {
    Json runs = Json::object();
    for (const auto& [m, run] : row.runs) {
      Json jr = to_json_doc(run);
      jr.erase("match_trace");
      runs[to_string(m)] = jr;
    }
    trials.push_back({{"trial", row.trial},
                      {"seed", row.seed},
                      {"scenario_digest", row.digest},
                      {"buyers", row.buyers},
                      {"sellers", row.sellers},
                      {"runs", runs}});
  }
  Json summary = Json::object();
  for (const auto& [m, s] : r.summary) {
    summary[to_string(m)] = {{"runs", s.runs},
                             {"successes", s.successes},
                             {"mean_objective", s.mean_objective},
                             {"mean_runtime_secs", s.mean_runtime},
                             {"max_runtime_secs", s.max_runtime}};
  }
  Json improvement = Json::object();
  for (const auto& [m, v] : r.improvement) improvement[to_string(m)] = v;
  const Json config = r.config.gen;
  return {{"config", config},
          {"config_digest", digest(config)},
          {"seed", r.config.seed},
          {"trials_requested", r.config.trials},
          {"opt_buyer_cutoff", r.config.opt_buyer_cutoff},
          {"budget_secs", r.config.budget_secs},
          {"trials", trials},
          {"summary", summary},
          {"improvement_over", improvement},
          {"opt_ratio", r.opt_ratio ? Json(*r.opt_ratio) : Json(nullptr)},
          {"opt_dominated", r.opt_dominated}};
}

std::string trials_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "trial,seed,scenario_digest,buyers,sellers,mechanism,success,truncated,objective,"
         "runtime_secs\n";
  for (const auto& row : r.trials) {
    for (const auto& [m, run] : row.runs) {
      out << row.trial << ',' << row.seed << ',' << row.digest << ',' << row.buyers << ','
          << row.sellers << ',' << to_string(m) << ',' << run.success << ','
          << run.truncated << ',' << run.objective_value << ',' << run.runtime_secs << '\n';
    }
  }
  return out.str();
}

namespace {

// Mean wall time of `fn`, repeated until `min_secs` has elapsed. Stops after
// the first call when it reports truncation.
template <typename Fn>
double time_repeated(Fn&& fn, double min_secs, bool& truncated) {
  // Best mean over a few batches, so one descheduled batch does not skew
  // the figure. A truncated run ends timing at once.
  constexpr int kBatches = 5;
  double best = std::numeric_limits<double>::infinity();
  truncated = false;
  for (int batch = 0; batch < kBatches && !truncated; ++batch) {
    const auto start = Clock::now();
    int reps = 0;
    do {
      truncated = !fn();
      ++reps;
    } while (!truncated && seconds_since(start) < min_secs / kBatches);
    const double mean = seconds_since(start) / reps;
    best = truncated ? mean : std::min(best, mean);
  }
  return best;
}

}  // namespace

std::vector<BenchRow> run_bench(const GenConfig& base, int job_type, int sp_lo, int sp_hi,
                                double budget_secs, double min_timing_secs) {
  if (sp_lo < 1 || sp_hi < sp_lo) throw AuctionError("bad SP range");
  std::vector<BenchRow> rows;
  for (int k = sp_lo; k <= sp_hi; ++k) {
    GenConfig cfg = base;
    cfg.job_types = {job_type};
    cfg.sp_count = k;
    const Scenario s = generate(cfg);
    const Market market(s);
    BenchRow row;
    row.job_type = job_type;
    row.sp_count = k;
    row.buyers = market.buyer_count();
    row.sellers = market.seller_count();
    row.candidates = naive_candidate_count(row.buyers, row.sellers);

    const auto deadline = deadline_after(budget_secs);
    bool truncated = false;
    row.opt_secs = time_repeated(
        [&] {
          SolveOptions o;
          o.deadline = deadline;
          return solve_naive(market, o).status != SolveStatus::kTruncated;
        },
        min_timing_secs, truncated);
    row.opt_truncated = truncated;
    const auto pruned_deadline = deadline_after(budget_secs);
    row.pruned_secs = time_repeated(
        [&] {
          SolveOptions o;
          o.deadline = pruned_deadline;
          return solve_optimal(market, o).status != SolveStatus::kTruncated;
        },
        min_timing_secs, truncated);
    row.maxuosg_secs = time_repeated(
        [&] {
          row.maxuosg_success = run_maxuosg(s).success;
          return true;
        },
        min_timing_secs, truncated);
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out.precision(9);
  out << "job_type,sp_count,buyers,sellers,candidates,opt_secs,opt_truncated,pruned_secs,"
         "maxuosg_secs,maxuosg_success,log10_opt_secs,log10_maxuosg_secs\n";
  for (const auto& r : rows) {
    out << r.job_type << ',' << r.sp_count << ',' << r.buyers << ',' << r.sellers << ','
        << r.candidates << ',' << r.opt_secs << ',' << r.opt_truncated << ','
        << r.pruned_secs << ',' << r.maxuosg_secs << ',' << r.maxuosg_success << ','
        << std::log10(std::max(r.opt_secs, 1e-12)) << ','
        << std::log10(std::max(r.maxuosg_secs, 1e-12)) << '\n';
  }
  return out.str();
}

Json to_json_doc(const std::vector<BenchRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    out.push_back({{"job_type", r.job_type},
                   {"sp_count", r.sp_count},
                   {"buyers", r.buyers},
                   {"sellers", r.sellers},
                   {"candidates", r.candidates},
                   {"opt_secs", r.opt_secs},
                   {"opt_truncated", r.opt_truncated},
                   {"pruned_secs", r.pruned_secs},
                   {"maxuosg_secs", r.maxuosg_secs},
                   {"maxuosg_success", r.maxuosg_success}});
  }
  return out;
}

}  // namespace vcauction

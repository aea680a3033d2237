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


// Experiment plumbing shared by the CLI and the acceptance suite: running one
// mechanism with timing and re-validation, payment/utility audits, seeded
// batches and the runtime sweep.

#ifndef VCAUCTION_HARNESS_HPP_
#define VCAUCTION_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vcauction/baselines.hpp"
#include "vcauction/maxuosg.hpp"
#include "vcauction/model.hpp"
#include "vcauction/opt_solver.hpp"
#include "vcauction/scenario.hpp"
#include "vcauction/serialize.hpp"

namespace vcauction {

enum class Mechanism { kOpt, kMaxUosg, kEtpm, kLpm, kRmm };

const char* to_string(Mechanism m);
std::optional<Mechanism> parse_mechanism(const std::string& name);
std::vector<Mechanism> all_mechanisms();

struct MechanismRun {
  Mechanism mechanism = Mechanism::kOpt;
  bool success = false;
  bool truncated = false;
  Assignment assignment;
  double objective_value = 0.0;
  // Winners' prices. Baselines charge the bid they selected on.
  std::map<SellerId, double> payments;
  double runtime_secs = 0.0;
  std::uint64_t work = 0;  // search nodes, match steps or restart attempts
  std::vector<MatchEvent> match_trace;
};

// Runs one mechanism. `seed` drives the baselines; `budget_secs` bounds opt.
// A successful assignment is re-checked against every constraint and an
// AuctionError is thrown if it fails, so no infeasible result gets out.
MechanismRun run_mechanism(const Scenario& s, Mechanism m, std::uint64_t seed = 0,
                           double budget_secs = 300.0);

Json to_json_doc(const MechanismRun& r);

struct WinnerAudit {
  SellerId seller;
  BuyerId buyer;
  double bid = 0.0;
  double true_value = 0.0;
  double payment = 0.0;
  double utility = 0.0;  // payment - true value
  bool rational = true;  // payment >= bid and utility >= 0
};

struct SweepRow {
  SellerId seller;
  double bid = 0.0;
  bool won = false;
  double payment = 0.0;
  double utility = 0.0;
  std::string classification;
  bool order_preserved = false;
};

struct VerifyReport {
  Mechanism mechanism = Mechanism::kOpt;
  bool success = false;
  bool truncated = false;
  std::vector<WinnerAudit> winners;
  std::map<std::pair<int, int>, double> vm_utility;
  std::map<int, double> sp_utility;
  std::vector<SweepRow> sweep;
  int ir_violations = 0;
  int truth_violations = 0;    // opt: gains; MaxUoSG: gains with order kept
  int payment_mismatches = 0;  // MaxUoSG payments vs. the serialized lists
  int gains = 0;               // every gain, legal or not

  bool ok() const {
    return ir_violations == 0 && truth_violations == 0 && payment_mismatches == 0;
  }
};

// Audits every winner (payment >= bid, seller/VM/SP utility >= 0) and, when
// `sweep` is set and the mechanism has payments, sweeps each winner's bid
// over 21 points in [0.5 q, 1.5 q].
VerifyReport verify(const Scenario& s, Mechanism m, bool sweep = true,
                    double budget_secs = 300.0);

Json to_json_doc(const VerifyReport& r);
std::string sweep_csv(const VerifyReport& r);

// Recomputes every MaxUoSG payment from the JSON form of the buyer lists
// alone; returns the number of winners whose payment differs by more than
// 1e-9.
int recheck_maxuosg_payments(const Json& buyer_lists, const Assignment& a,
                             const std::map<SellerId, double>& payments);

struct ExperimentConfig {
  GenConfig gen;
  int trials = 50;
  std::uint64_t seed = 1;
  int opt_buyer_cutoff = 10;  // skip opt above this many buyers
  double budget_secs = 300.0;
};

struct TrialRow {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string digest;
  int buyers = 0;
  int sellers = 0;
  std::map<Mechanism, MechanismRun> runs;  // only the mechanisms that ran
};

struct MechanismSummary {
  int runs = 0;
  int successes = 0;
  double mean_objective = 0.0;  // over successful runs
  double mean_runtime = 0.0;
  double max_runtime = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRow> trials;
  std::map<Mechanism, MechanismSummary> summary;
  // Relative gain of MaxUoSG's mean objective over each baseline's, counted
  // over the trials where both succeeded.
  std::map<Mechanism, double> improvement;
  // Mean of MaxUoSG / opt over trials where opt finished with a positive
  // objective; a MaxUoSG failure counts as 0.
  std::optional<double> opt_ratio;
  int opt_dominated = 0;  // trials with MaxUoSG above opt (must stay 0)
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

Json to_json_doc(const ExperimentReport& r);
std::string trials_csv(const ExperimentReport& r);

struct BenchRow {
  int job_type = 0;
  int sp_count = 0;
  int buyers = 0;
  int sellers = 0;
  std::uint64_t candidates = 0;  // b! * C(s, b)
  double opt_secs = 0.0;         // exhaustive enumeration
  bool opt_truncated = false;
  double pruned_secs = 0.0;      // branch-and-bound solver
  double maxuosg_secs = 0.0;
  bool maxuosg_success = false;
};

// One row per SP count in [sp_lo, sp_hi]; every row reuses `seed`, so the
// smaller markets are sub-markets of the larger ones. Short runs repeat until
// `min_timing_secs` has elapsed and report the mean.
std::vector<BenchRow> run_bench(const GenConfig& base, int job_type, int sp_lo, int sp_hi,
                                double budget_secs, double min_timing_secs = 0.02);

std::string bench_csv(const std::vector<BenchRow>& rows);
Json to_json_doc(const std::vector<BenchRow>& rows);

}  // namespace vcauction

#endif  // VCAUCTION_HARNESS_HPP_

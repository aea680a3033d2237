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


// Command-line front end: generate, solve, experiment, verify, bench.
// Exit codes: 0 success, 1 property violation, 2 usage or input error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vcauction/harness.hpp"

namespace {

using namespace vcauction;

constexpr int kViolation = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// `results.json` -> `results.csv`; anything else gets ".csv" appended.
std::string csv_path(const std::string& out) {
  if (out.empty() || out == "-") return {};
  std::filesystem::path p(out);
  if (p.extension() == ".json") return p.replace_extension(".csv").string();
  return out + ".csv";
}

GenConfig load_config(const std::string& config_path, const std::string& preset_name) {
  GenConfig cfg = preset(preset_name);
  if (!config_path.empty()) {
    try {
      read_json_file(config_path).get_to(cfg);
    } catch (const Json::exception& e) {
      throw InputError(config_path + ": " + e.what());
    }
  }
  return cfg;
}

Scenario load_scenario(const std::string& path) {
  Scenario s;
  try {
    read_json_file(path).get_to(s);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  const auto violations = validate_scenario(s);
  if (!violations.empty()) {
    std::string msg = path + ": invalid scenario";
    for (const auto& v : violations) msg += "\n  " + v.where + ": " + v.message;
    throw InputError(msg);
  }
  return s;
}

Mechanism mechanism_or_throw(const std::string& name) {
  auto m = parse_mechanism(name);
  if (!m) throw InputError("unknown mechanism '" + name + "'");
  return *m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-job auctions in vehicular clouds"};
  app.require_subcommand(1);

  std::string config_path, preset_name = "small", out_path, scenario_path;
  std::string mechanism_name = "maxuosg";
  std::uint64_t seed = 1;
  int trials = 50;
  int job_type = 1, sp_lo = 1, sp_hi = 5;
  int opt_cutoff = 10;
  double budget_secs = 300.0;
  bool no_sweep = false;
  bool seed_given = false;

  auto* gen = app.add_subcommand("generate", "Write a random scenario document");
  gen->add_option("--config", config_path, "GenConfig JSON (overrides the preset)");
  gen->add_option("--preset", preset_name, "small | large | bench | tiny | stress");
  gen->add_option("--seed", seed, "Random seed")->each([&](const std::string&) {
    seed_given = true;
  });
  gen->add_option("--out", out_path, "Output path (stdout when omitted)");

  auto* solve = app.add_subcommand("solve", "Run one mechanism on a scenario");
  solve->add_option("scenario", scenario_path, "Scenario JSON")->required();
  solve->add_option("--mechanism", mechanism_name, "opt | maxuosg | etpm | lpm | rmm");
  solve->add_option("--seed", seed, "Seed for the random baselines");
  solve->add_option("--budget-secs", budget_secs, "Wall-clock budget for opt");
  solve->add_option("--out", out_path, "Output path (stdout when omitted)");

  auto* exp = app.add_subcommand("experiment", "Seeded batch over every mechanism");
  exp->add_option("--config", config_path, "GenConfig JSON (overrides the preset)");
  exp->add_option("--preset", preset_name, "Scenario preset");
  exp->add_option("--trials", trials, "Number of scenarios")->check(CLI::PositiveNumber);
  exp->add_option("--seed", seed, "Seed of the first trial");
  exp->add_option("--opt-cutoff", opt_cutoff, "Skip opt above this many buyers");
  exp->add_option("--budget-secs", budget_secs, "Wall-clock budget for opt per trial");
  exp->add_option("--out", out_path, "Summary JSON; per-trial CSV goes next to it");

  auto* ver = app.add_subcommand("verify", "Payment, rationality and bid-sweep audit");
  ver->add_option("scenario", scenario_path, "Scenario JSON")->required();
  ver->add_option("--mechanism", mechanism_name, "opt | maxuosg | etpm | lpm | rmm");
  ver->add_option("--budget-secs", budget_secs, "Wall-clock budget for opt");
  ver->add_flag("--no-sweep", no_sweep, "Skip the misreport sweep");
  ver->add_option("--out", out_path, "Report JSON; sweep CSV goes next to it");

  auto* bench = app.add_subcommand("bench", "Runtime sweep over the SP count");
  bench->add_option("--config", config_path, "GenConfig JSON (overrides the preset)");
  bench->add_option("--job-type", job_type, "Job type id");
  bench->add_option("--sp-lo", sp_lo, "Smallest SP count")->check(CLI::PositiveNumber);
  bench->add_option("--sp-hi", sp_hi, "Largest SP count")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Scenario seed");
  bench->add_option("--budget-secs", budget_secs, "Wall-clock budget for opt per row");
  bench->add_option("--out", out_path, "Table JSON; CSV goes next to it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*gen) {
      GenConfig cfg = load_config(config_path, preset_name);
      if (seed_given || config_path.empty()) cfg.seed = seed;
      emit(out_path, dump(Json(generate(cfg))));
      return 0;
    }
    if (*solve) {
      const Mechanism m = mechanism_or_throw(mechanism_name);
      const Scenario s = load_scenario(scenario_path);
      Json doc = to_json_doc(run_mechanism(s, m, seed, budget_secs));
      doc["scenario_digest"] = scenario_digest(s);
      doc["seed"] = seed;
      emit(out_path, dump(doc));
      return 0;
    }
    if (*exp) {
      ExperimentConfig cfg;
      cfg.gen = load_config(config_path, preset_name);
      cfg.trials = trials;
      cfg.seed = seed;
      cfg.opt_buyer_cutoff = opt_cutoff;
      cfg.budget_secs = budget_secs;
      const ExperimentReport r = run_experiment(cfg);
      emit(out_path, dump(to_json_doc(r)));
      if (auto csv = csv_path(out_path); !csv.empty()) write_text_file(csv, trials_csv(r));
      return r.opt_dominated == 0 ? 0 : kViolation;
    }
    if (*ver) {
      const Mechanism m = mechanism_or_throw(mechanism_name);
      const Scenario s = load_scenario(scenario_path);
      const VerifyReport r = verify(s, m, !no_sweep, budget_secs);
      Json doc = to_json_doc(r);
      doc["scenario_digest"] = scenario_digest(s);
      emit(out_path, dump(doc));
      if (auto csv = csv_path(out_path); !csv.empty()) write_text_file(csv, sweep_csv(r));
      if (!r.ok()) {
        std::cerr << "verify: " << r.ir_violations << " rationality, " << r.truth_violations
                  << " truthfulness, " << r.payment_mismatches << " payment violations\n";
        return kViolation;
      }
      return 0;
    }
    if (*bench) {
      GenConfig cfg = load_config(config_path, "bench");
      cfg.seed = seed;
      const auto rows = run_bench(cfg, job_type, sp_lo, sp_hi, budget_secs);
      emit(out_path, dump(to_json_doc(rows)));
      if (auto csv = csv_path(out_path); !csv.empty()) {
        write_text_file(csv, bench_csv(rows));
      } else if (out_path.empty()) {
        std::cout << bench_csv(rows);
      }
      return 0;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const AuctionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

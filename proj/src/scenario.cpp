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


#include "vcauction/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "vcauction/economics.hpp"

namespace vcauction {

std::vector<JobTypeSpec> default_job_types() {
  return {
      {1, 3, {{0, 1}, {1, 2}, {0, 2}}},
      {2, 4, {{0, 1}, {0, 2}, {0, 3}}},
      {3, 5, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {3, 4}}},
      {4, 6, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {0, 5}}},
  };
}

std::string check_job_type(const JobTypeSpec& spec) {
  const int n = spec.component_count;
  if (n < 1) return "type " + std::to_string(spec.type_id) + " has no components";
  std::set<std::pair<int, int>> seen;
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int merges = 0;
  for (auto [a, b] : spec.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      return "type " + std::to_string(spec.type_id) + " has a bad edge";
    }
    if (!seen.insert(std::minmax(a, b)).second) {
      return "type " + std::to_string(spec.type_id) + " has a duplicate edge";
    }
    const int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      ++merges;
    }
  }
  if (merges != n - 1) return "type " + std::to_string(spec.type_id) + " is not connected";
  return {};
}

namespace {

void check_range(std::vector<std::string>& out, const char* name, const Range& r) {
  if (!(r.lo > 0.0) || !(r.hi >= r.lo) || !std::isfinite(r.hi)) {
    out.push_back(std::string(name) + " range must satisfy 0 < lo <= hi");
  }
}

const JobTypeSpec* find_type(const GenConfig& cfg, int id) {
  for (const auto& t : cfg.type_library) {
    if (t.type_id == id) return &t;
  }
  return nullptr;
}

// Independent stream per (seed, tag, a, b).
std::mt19937_64 stream(std::uint64_t seed, std::uint32_t tag, std::uint32_t a = 0,
                       std::uint32_t b = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    tag, a, b};
  return std::mt19937_64(seq);
}

double draw(std::mt19937_64& rng, const Range& r) {
  if (r.lo == r.hi) return r.lo;
  return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
}

enum : std::uint32_t { kGlobal = 1, kJob, kSp, kRate, kCoverage };

}  // namespace

std::vector<std::string> check_config(const GenConfig& cfg) {
  std::vector<std::string> out;
  check_range(out, "epsilon", cfg.epsilon);
  if (cfg.epsilon.hi > 1.0) out.push_back("epsilon range must lie in (0, 1]");
  check_range(out, "alpha", cfg.alpha);
  check_range(out, "base_time", cfg.base_time);
  check_range(out, "tolerable_time", cfg.tolerable_time);
  check_range(out, "edge_weight", cfg.edge_weight);
  check_range(out, "contact_rate", cfg.contact_rate);
  check_range(out, "beta1", cfg.beta1);
  check_range(out, "beta2", cfg.beta2);
  if (!(cfg.price_scale > 0.0)) out.push_back("price_scale must be positive");
  if (cfg.sp_count < 1) out.push_back("sp_count must be at least 1");
  if (cfg.vms_per_sp.lo < 1 || cfg.vms_per_sp.hi < cfg.vms_per_sp.lo) {
    out.push_back("vms_per_sp must satisfy 1 <= lo <= hi");
  }
  if (!(cfg.coverage_density > 0.0) || cfg.coverage_density > 1.0) {
    out.push_back("coverage_density must lie in (0, 1]");
  }
  for (const auto& t : cfg.type_library) {
    if (auto msg = check_job_type(t); !msg.empty()) out.push_back(msg);
  }
  for (int id : cfg.job_types) {
    if (!find_type(cfg, id)) out.push_back("unknown job type " + std::to_string(id));
  }
  // Worst case of beta2 - beta1 * c over every capability a seller can get.
  if (cfg.beta2.lo - cfg.beta1.hi * cfg.tolerable_time.hi <= 0.0) {
    out.push_back("beta ranges allow a non-positive valuation");
  }
  return out;
}

Scenario generate(const GenConfig& cfg) {
  if (auto errors = check_config(cfg); !errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw AuctionError(msg);
  }
  Scenario s;
  s.seed = cfg.seed;
  auto global = stream(cfg.seed, kGlobal);
  s.epsilon = draw(global, cfg.epsilon);
  s.valuation.beta1 = draw(global, cfg.beta1);
  s.valuation.beta2 = draw(global, cfg.beta2);
  s.valuation.price_scale = cfg.price_scale;

  for (std::size_t n = 0; n < cfg.job_types.size(); ++n) {
    const JobTypeSpec& type = *find_type(cfg, cfg.job_types[n]);
    auto rng = stream(cfg.seed, kJob, static_cast<std::uint32_t>(n));
    GraphJob job;
    job.owner_index = static_cast<int>(n);
    job.alpha = draw(rng, cfg.alpha);
    for (int x = 0; x < type.component_count; ++x) {
      job.components.push_back({draw(rng, cfg.tolerable_time)});
    }
    for (auto [a, b] : type.edges) {
      const double cap = std::min(job.components[a].tolerable_time,
                                  job.components[b].tolerable_time);
      job.edges.push_back({{a, b}, std::min(draw(rng, cfg.edge_weight), cap)});
    }
    s.jobs.push_back(std::move(job));
  }
  const double max_demand = s.max_tolerable_time();

  for (int m = 0; m < cfg.sp_count; ++m) {
    auto rng = stream(cfg.seed, kSp, static_cast<std::uint32_t>(m));
    ServiceProvider sp;
    sp.index = m;
    const int vms =
        std::uniform_int_distribution<int>(cfg.vms_per_sp.lo, cfg.vms_per_sp.hi)(rng);
    for (int y = 0; y < vms; ++y) {
      const double base = draw(rng, cfg.base_time);
      sp.vms.push_back({base, max_demand > 0.0 ? max_rank_for(base, max_demand) : 0});
    }
    s.sps.push_back(std::move(sp));
  }

  s.contact_rate.assign(cfg.sp_count, std::vector<double>(cfg.sp_count, 0.0));
  for (int a = 0; a < cfg.sp_count; ++a) {
    for (int b = a + 1; b < cfg.sp_count; ++b) {
      auto rng = stream(cfg.seed, kRate, a, b);
      s.contact_rate[a][b] = s.contact_rate[b][a] = draw(rng, cfg.contact_rate);
    }
  }

  for (std::size_t n = 0; n < s.jobs.size(); ++n) {
    std::vector<int> cover;
    std::vector<double> keys;
    for (int m = 0; m < cfg.sp_count; ++m) {
      auto rng = stream(cfg.seed, kCoverage, static_cast<std::uint32_t>(n), m);
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      keys.push_back(u);
      if (u < cfg.coverage_density) cover.push_back(m);
    }
    if (cover.empty()) {
      cover.push_back(static_cast<int>(std::min_element(keys.begin(), keys.end()) -
                                       keys.begin()));
    }
    s.coverage.push_back(std::move(cover));
  }

  if (max_demand > 0.0) s.sellers = expand_vms(s.sps, max_demand);
  for (Seller& seller : s.sellers) {
    seller.true_value = true_valuation(seller.capability, s.valuation);
    seller.bid = seller.true_value;
  }
  return s;
}

GenConfig preset(const std::string& name) {
  GenConfig cfg;
  if (name == "small") return cfg;
  if (name == "large") {
    cfg.job_types = {2, 2, 3, 4};
    cfg.sp_count = 5;
    cfg.vms_per_sp = {4, 4};
    cfg.contact_rate = {0.01, 0.02};
    return cfg;
  }
  if (name == "bench") {
    cfg.job_types = {1};
    cfg.sp_count = 5;
    cfg.vms_per_sp = {4, 4};
    return cfg;
  }
  if (name == "tiny") {
    cfg.job_types = {1};
    cfg.sp_count = 2;
    cfg.vms_per_sp = {2, 2};
    cfg.base_time = {0.28, 0.34};
    cfg.contact_rate = {0.05, 0.3};
    cfg.coverage_density = 0.9;
    return cfg;
  }
  if (name == "stress") {
    cfg.contact_rate = {0.05, 0.3};
    cfg.coverage_density = 0.7;
    return cfg;
  }
  throw AuctionError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"small", "large", "bench", "tiny", "stress"};
}

}  // namespace vcauction

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


#include "vcauction/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace vcauction {

void to_json(Json& j, const BuyerId& id) { j = Json::array({id.job, id.component}); }

void from_json(const Json& j, BuyerId& id) {
  id.job = j.at(0).get<int>();
  id.component = j.at(1).get<int>();
}

void to_json(Json& j, const SellerId& id) { j = Json::array({id.sp, id.vm, id.rank}); }

void from_json(const Json& j, SellerId& id) {
  id.sp = j.at(0).get<int>();
  id.vm = j.at(1).get<int>();
  id.rank = j.at(2).get<int>();
}

void to_json(Json& j, const Scenario& s) {
  Json jobs = Json::array();
  for (const auto& job : s.jobs) {
    Json times = Json::array();
    for (const auto& c : job.components) times.push_back(c.tolerable_time);
    Json edges = Json::array();
    for (const auto& e : job.edges) {
      edges.push_back({{"a", e.endpoints.first}, {"b", e.endpoints.second}, {"weight", e.weight}});
    }
    jobs.push_back({{"owner", job.owner_index},
                    {"alpha", job.alpha},
                    {"tolerable_times", times},
                    {"edges", edges}});
  }
  Json sps = Json::array();
  for (const auto& sp : s.sps) {
    Json vms = Json::array();
    for (const auto& vm : sp.vms) {
      vms.push_back({{"base_time", vm.base_time}, {"max_rank", vm.max_rank}});
    }
    sps.push_back({{"index", sp.index}, {"vms", vms}});
  }
  Json sellers = Json::array();
  for (const auto& sel : s.sellers) {
    sellers.push_back({{"id", sel.id},
                       {"capability", sel.capability},
                       {"bid", sel.bid},
                       {"true_value", sel.true_value}});
  }
  j = {{"jobs", jobs},
       {"sps", sps},
       {"contact_rate", s.contact_rate},
       {"coverage", s.coverage},
       {"epsilon", s.epsilon},
       {"valuation",
        {{"beta1", s.valuation.beta1},
         {"beta2", s.valuation.beta2},
         {"price_scale", s.valuation.price_scale}}},
       {"sellers", sellers},
       {"seed", s.seed}};
}

void from_json(const Json& j, Scenario& s) {
  s = Scenario{};
  for (const auto& jj : j.at("jobs")) {
    GraphJob job;
    job.owner_index = jj.at("owner").get<int>();
    job.alpha = jj.at("alpha").get<double>();
    for (const auto& t : jj.at("tolerable_times")) job.components.push_back({t.get<double>()});
    for (const auto& e : jj.at("edges")) {
      job.edges.push_back(
          {{e.at("a").get<int>(), e.at("b").get<int>()}, e.at("weight").get<double>()});
    }
    s.jobs.push_back(std::move(job));
  }
  for (const auto& js : j.at("sps")) {
    ServiceProvider sp;
    sp.index = js.at("index").get<int>();
    for (const auto& vm : js.at("vms")) {
      sp.vms.push_back({vm.at("base_time").get<double>(), vm.at("max_rank").get<int>()});
    }
    s.sps.push_back(std::move(sp));
  }
  s.contact_rate = j.at("contact_rate").get<std::vector<std::vector<double>>>();
  s.coverage = j.at("coverage").get<std::vector<std::vector<int>>>();
  s.epsilon = j.at("epsilon").get<double>();
  const auto& v = j.at("valuation");
  s.valuation.beta1 = v.at("beta1").get<double>();
  s.valuation.beta2 = v.at("beta2").get<double>();
  s.valuation.price_scale = v.value("price_scale", 1.0);
  for (const auto& js : j.at("sellers")) {
    Seller sel;
    sel.id = js.at("id").get<SellerId>();
    sel.capability = js.at("capability").get<double>();
    sel.bid = js.at("bid").get<double>();
    sel.true_value = js.at("true_value").get<double>();
    s.sellers.push_back(sel);
  }
  s.seed = j.value("seed", std::uint64_t{0});
}

void to_json(Json& j, const Assignment& a) {
  j = Json::array();
  for (const auto& p : a.pairs()) j.push_back({{"buyer", p.buyer}, {"seller", p.seller}});
}

void from_json(const Json& j, Assignment& a) {
  a = Assignment{};
  for (const auto& p : j) a.add(p.at("buyer").get<BuyerId>(), p.at("seller").get<SellerId>());
}

void to_json(Json& j, const JobTypeSpec& t) {
  Json edges = Json::array();
  for (auto [a, b] : t.edges) edges.push_back(Json::array({a, b}));
  j = {{"type_id", t.type_id}, {"component_count", t.component_count}, {"edges", edges}};
}

void from_json(const Json& j, JobTypeSpec& t) {
  t.type_id = j.at("type_id").get<int>();
  t.component_count = j.at("component_count").get<int>();
  t.edges.clear();
  for (const auto& e : j.at("edges")) t.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
}

namespace {

Json range_json(const Range& r) { return Json::array({r.lo, r.hi}); }

void read_range(const Json& j, const char* key, Range& r) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  r.lo = v.at(0).get<double>();
  r.hi = v.at(1).get<double>();
}

}  // namespace

void to_json(Json& j, const GenConfig& cfg) {
  j = {{"epsilon", range_json(cfg.epsilon)},
       {"alpha", range_json(cfg.alpha)},
       {"base_time", range_json(cfg.base_time)},
       {"tolerable_time", range_json(cfg.tolerable_time)},
       {"edge_weight", range_json(cfg.edge_weight)},
       {"contact_rate", range_json(cfg.contact_rate)},
       {"beta1", range_json(cfg.beta1)},
       {"beta2", range_json(cfg.beta2)},
       {"price_scale", cfg.price_scale},
       {"job_types", cfg.job_types},
       {"type_library", cfg.type_library},
       {"sp_count", cfg.sp_count},
       {"vms_per_sp", Json::array({cfg.vms_per_sp.lo, cfg.vms_per_sp.hi})},
       {"coverage_density", cfg.coverage_density},
       {"seed", cfg.seed}};
}

void from_json(const Json& j, GenConfig& cfg) {
  if (j.contains("preset")) cfg = preset(j.at("preset").get<std::string>());
  read_range(j, "epsilon", cfg.epsilon);
  read_range(j, "alpha", cfg.alpha);
  read_range(j, "base_time", cfg.base_time);
  read_range(j, "tolerable_time", cfg.tolerable_time);
  read_range(j, "edge_weight", cfg.edge_weight);
  read_range(j, "contact_rate", cfg.contact_rate);
  read_range(j, "beta1", cfg.beta1);
  read_range(j, "beta2", cfg.beta2);
  cfg.price_scale = j.value("price_scale", cfg.price_scale);
  if (j.contains("job_types")) cfg.job_types = j.at("job_types").get<std::vector<int>>();
  if (j.contains("type_library")) {
    cfg.type_library = j.at("type_library").get<std::vector<JobTypeSpec>>();
  }
  cfg.sp_count = j.value("sp_count", cfg.sp_count);
  if (j.contains("vms_per_sp")) {
    cfg.vms_per_sp.lo = j.at("vms_per_sp").at(0).get<int>();
    cfg.vms_per_sp.hi = j.at("vms_per_sp").at(1).get<int>();
  }
  cfg.coverage_density = j.value("coverage_density", cfg.coverage_density);
  cfg.seed = j.value("seed", cfg.seed);
}

void to_json(Json& j, const PrefEntry& e) {
  j = {{"index", e.index},
       {"buyer", e.buyer},
       {"seller", e.seller ? Json(*e.seller) : Json(nullptr)},
       {"value", e.value},
       {"service_value", e.service_value},
       {"bid", e.bid}};
}

void from_json(const Json& j, PrefEntry& e) {
  e.index = j.at("index").get<int>();
  e.buyer = j.at("buyer").get<BuyerId>();
  if (j.at("seller").is_null()) {
    e.seller.reset();
  } else {
    e.seller = j.at("seller").get<SellerId>();
  }
  e.value = j.at("value").get<double>();
  e.service_value = j.at("service_value").get<double>();
  e.bid = j.at("bid").get<double>();
}

void to_json(Json& j, const BuyerPrefList& l) {
  j = {{"buyer", l.buyer}, {"entries", l.entries}};
}

void from_json(const Json& j, BuyerPrefList& l) {
  l.buyer = j.at("buyer").get<BuyerId>();
  l.entries = j.at("entries").get<std::vector<PrefEntry>>();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string scenario_digest(const Scenario& s) { return digest(Json(s)); }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AuctionError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw AuctionError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw AuctionError("cannot write " + path);
  out << text;
  if (!out) throw AuctionError("write failed for " + path);
}

}  // namespace vcauction

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


// JSON documents for scenarios, generator configs and assignments.

#ifndef VCAUCTION_SERIALIZE_HPP_
#define VCAUCTION_SERIALIZE_HPP_

#include <string>

#include "json.hpp"
#include "vcauction/maxuosg.hpp"
#include "vcauction/model.hpp"
#include "vcauction/scenario.hpp"

namespace vcauction {

using Json = nlohmann::json;

void to_json(Json& j, const BuyerId& id);
void from_json(const Json& j, BuyerId& id);
void to_json(Json& j, const SellerId& id);
void from_json(const Json& j, SellerId& id);
void to_json(Json& j, const Scenario& s);
void from_json(const Json& j, Scenario& s);
void to_json(Json& j, const Assignment& a);
void from_json(const Json& j, Assignment& a);
void to_json(Json& j, const JobTypeSpec& t);
void from_json(const Json& j, JobTypeSpec& t);
void to_json(Json& j, const GenConfig& cfg);
// Missing keys keep their defaults, so a config file may hold only overrides.
void from_json(const Json& j, GenConfig& cfg);
void to_json(Json& j, const PrefEntry& e);
void from_json(const Json& j, PrefEntry& e);
void to_json(Json& j, const BuyerPrefList& l);
void from_json(const Json& j, BuyerPrefList& l);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

// 16 hex digits of FNV-1a over the compact canonical JSON.
std::string digest(const Json& j);
std::string scenario_digest(const Scenario& s);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace vcauction

#endif  // VCAUCTION_SERIALIZE_HPP_

/**
 * Copyright 2026 The drfkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "drfkit/io.hpp"

#include "json.hpp"

namespace drfkit {

using nlohmann::json;
using nlohmann::ordered_json;

ScenarioFormatError::ScenarioFormatError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

namespace {

std::int64_t read_integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ScenarioFormatError(where, "expected an integer");
  if (value.is_number_unsigned() && value.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw ScenarioFormatError(where, "integer out of range");
  }
  return value.get<std::int64_t>();
}

std::vector<std::int64_t> read_integers(const json& value, const std::string& where) {
  if (!value.is_array()) throw ScenarioFormatError(where, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < value.size(); ++i) out.push_back(read_integer(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const json& object, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& item : object.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw ScenarioFormatError(where.empty() ? item.key() : where + "." + item.key(), "unknown field");
  }
}

ordered_json vector_json(const std::vector<std::int64_t>& values) {
  ordered_json out = ordered_json::array();
  for (auto v : values) out.push_back(v);
  return out;
}

ordered_json rational_list(const std::vector<Rational>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioFormatError("<document>", std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ScenarioFormatError("<document>", "expected a JSON object");
  reject_unknown(doc, {"schema_version", "resources", "users"}, "");
  if (doc.contains("schema_version") && (!doc["schema_version"].is_number_integer() || doc["schema_version"] != 1)) {
    throw ScenarioFormatError("schema_version", "unsupported version (expected 1)");
  }
  if (!doc.contains("resources")) throw ScenarioFormatError("resources", "missing");
  if (!doc.contains("users")) throw ScenarioFormatError("users", "missing");

  Scenario scenario;
  scenario.resources = read_integers(doc["resources"], "resources");
  const auto& users = doc["users"];
  if (!users.is_array()) throw ScenarioFormatError("users", "expected an array of objects");
  for (std::size_t i = 0; i < users.size(); ++i) {
    const std::string where = "users[" + std::to_string(i) + "]";
    const auto& entry = users[i];
    if (!entry.is_object()) throw ScenarioFormatError(where, "expected an object");
    reject_unknown(entry, {"id", "demand", "weight"}, where);
    UserDemand user;
    if (!entry.contains("id") || !entry["id"].is_string()) throw ScenarioFormatError(where + ".id", "expected a string");
    user.id = entry["id"].get<std::string>();
    if (!entry.contains("demand")) throw ScenarioFormatError(where + ".demand", "missing");
    user.demand = read_integers(entry["demand"], where + ".demand");
    if (entry.contains("weight")) {
      const auto& weight = entry["weight"];
      if (!weight.is_array()) throw ScenarioFormatError(where + ".weight", "expected an array of fraction strings");
      WeightVector w;
      for (std::size_t r = 0; r < weight.size(); ++r) {
        const std::string at = where + ".weight[" + std::to_string(r) + "]";
        if (!weight[r].is_string()) throw ScenarioFormatError(at, "expected a fraction string such as \"1/3\"");
        try {
          w.push_back(Rational::parse(weight[r].get<std::string>()));
        } catch (const std::invalid_argument& e) {
          throw ScenarioFormatError(at, e.what());
        }
      }
      user.weight = std::move(w);
    }
    scenario.users.push_back(std::move(user));
  }
  return scenario;
}

std::string scenario_document(const Scenario& scenario) {
  ordered_json users = ordered_json::array();
  for (const auto& user : scenario.users) {
    ordered_json entry = {{"id", user.id}, {"demand", vector_json(user.demand)}};
    if (user.weight) entry["weight"] = rational_list(*user.weight);
    users.push_back(std::move(entry));
  }
  ordered_json doc = {{"schema_version", 1}, {"resources", vector_json(scenario.resources)}, {"users", users}};
  return doc.dump(2) + "\n";
}

std::string allocation_document(const Allocation& allocation, std::string_view algorithm,
                                const std::map<std::string, std::string>& extra) {
  ordered_json doc;
  doc["schema_version"] = kOutputSchemaVersion;
  doc["algorithm"] = std::string(algorithm);
  for (const auto& [key, value] : extra) doc[key] = value;
  ordered_json tasks = ordered_json::object();
  for (const auto& [id, count] : allocation.tasks) tasks[id] = count;
  doc["tasks"] = std::move(tasks);
  ordered_json amounts = ordered_json::object();
  for (const auto& [id, vec] : allocation.per_user_amounts) amounts[id] = vector_json(vec);
  doc["per_user_amounts"] = std::move(amounts);
  doc["consumed"] = vector_json(allocation.consumed);
  doc["residual"] = vector_json(allocation.residual);
  return doc.dump(2) + "\n";
}

std::string divisible_document(const DivisibleAllocation& allocation) {
  ordered_json doc;
  doc["schema_version"] = kOutputSchemaVersion;
  doc["algorithm"] = "edrf";
  ordered_json shares = ordered_json::object();
  for (const auto& [id, share] : allocation.shares) shares[id] = share.to_string();
  doc["shares"] = std::move(shares);
  ordered_json amounts = ordered_json::object();
  for (const auto& [id, vec] : allocation.amounts) amounts[id] = rational_list(vec);
  doc["per_user_amounts"] = std::move(amounts);
  ordered_json rounds = ordered_json::array();
  for (const auto& round : allocation.rounds) {
    rounds.push_back({{"x", round.x.to_string()},
                      {"active", round.active},
                      {"saturated_resources", round.saturated_resources}});
  }
  doc["rounds"] = std::move(rounds);
  return doc.dump(2) + "\n";
}

std::string cycles_document(const CycleProfile& profile, const CycleDecomposition* decomposition) {
  ordered_json doc;
  doc["schema_version"] = kOutputSchemaVersion;
  doc["lcm_ds"] = profile.lcm_ds.to_string();
  doc["full_length"] = profile.full_length.get_str();
  ordered_json occ = ordered_json::object();
  for (const auto& [id, count] : profile.occurrences) occ[id] = count.get_str();
  doc["occurrences"] = std::move(occ);
  doc["basic_length"] = profile.basic_length;
  ordered_json basic = ordered_json::object();
  for (const auto& [id, count] : profile.basic_occurrences) basic[id] = count;
  doc["basic_occurrences"] = std::move(basic);
  ordered_json extras = ordered_json::array();
  for (const auto& p : profile.extra_occurrences) {
    extras.push_back({{"user", p.user},
                      {"ratio", p.ratio.to_string()},
                      {"fractional_part", p.fractional_part.to_string()},
                      {"period", p.period.get_str()},
                      {"extra_positions", p.extra_positions},
                      {"gaps", p.gaps},
                      {"truncated", p.truncated}});
  }
  doc["extra_occurrences"] = std::move(extras);

  if (decomposition) {
    ordered_json layers = ordered_json::array();
    for (const auto& layer : decomposition->layers) {
      ordered_json occurrences = ordered_json::object();
      for (const auto& [id, count] : layer.occurrences) occurrences[id] = count;
      ordered_json basic_occ = ordered_json::object();
      for (const auto& [id, count] : layer.basic_occurrences) basic_occ[id] = count;
      layers.push_back({{"active", layer.active},
                        {"occurrences", occurrences},
                        {"basic_occurrences", basic_occ},
                        {"deviates_from_basic", layer.deviates_from_basic},
                        {"k", layer.k.to_string()},
                        {"iterations", layer.iterations},
                        {"consumed", vector_json(layer.consumed)}});
    }
    doc["decomposition"] = {{"experimental", true},
                            {"layers", std::move(layers)},
                            {"residual", vector_json(decomposition->residual)}};
  }
  return doc.dump(2) + "\n";
}

}  // namespace drfkit

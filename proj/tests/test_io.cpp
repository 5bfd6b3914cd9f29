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

#include <string>

#include "doctest.h"

#include "drfkit/drf.hpp"
#include "drfkit/io.hpp"
#include "json.hpp"

using namespace drfkit;

namespace {

const char* kCanonical = R"({"resources": [9, 18],
  "users": [{"id": "A", "demand": [1, 4]}, {"id": "B", "demand": [3, 1]}]})";

std::string field_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ScenarioFormatError& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("parse a scenario") {
  auto s = parse_scenario(kCanonical);
  CHECK(s.resources == ResourceVector{9, 18});
  REQUIRE(s.users.size() == 2);
  CHECK(s.users[1].id == "B");
  CHECK(s.users[1].demand == DemandVector{3, 1});
  CHECK_FALSE(s.users[0].weight.has_value());
}

TEST_CASE("weights are fraction strings") {
  auto s = parse_scenario(R"({"resources": [4], "users": [{"id": "A", "demand": [1], "weight": ["1/3"]}]})");
  REQUIRE(s.users[0].weight.has_value());
  CHECK((*s.users[0].weight)[0] == Rational(1, 3));
}

TEST_CASE("format errors name the offending field") {
  CHECK(field_of("[1, 2") == "<document>");
  CHECK(field_of("[]") == "<document>");
  CHECK(field_of(R"({"users": []})") == "resources");
  CHECK(field_of(R"({"resources": [1]})") == "users");
  CHECK(field_of(R"({"resources": [1, "x"], "users": []})") == "resources[1]");
  CHECK(field_of(R"({"resources": [1], "users": [{"id": "A", "demand": [1.5]}]})") == "users[0].demand[0]");
  CHECK(field_of(R"({"resources": [1], "users": [{"demand": [1]}]})") == "users[0].id");
  CHECK(field_of(R"({"resources": [1], "users": [{"id": "A", "demand": [1], "colour": 1}]})") == "users[0].colour");
  CHECK(field_of(R"({"resources": [1], "users": [{"id": "A", "demand": [1], "weight": [0.5]}]})") ==
        "users[0].weight[0]");
  CHECK(field_of(R"({"resources": [1], "users": [{"id": "A", "demand": [1], "weight": ["1/0"]}]})") ==
        "users[0].weight[0]");
  CHECK(field_of(R"({"schema_version": 2, "resources": [1], "users": []})") == "schema_version");
  CHECK(field_of(R"({"resources": [1], "users": [], "extra": true})") == "extra");
}

TEST_CASE("scenario documents round-trip") {
  auto s = parse_scenario(kCanonical);
  s.users[0].weight = WeightVector{Rational(2, 3), Rational(1, 2)};
  s.users[1].weight = WeightVector{Rational(1, 3), Rational(1, 2)};
  auto text = scenario_document(s);
  auto back = parse_scenario(text);
  CHECK(scenario_document(back) == text);
  CHECK((*back.users[0].weight)[0] == Rational(2, 3));
}

TEST_CASE("allocation document layout") {
  auto r = drf_allocate(parse_scenario(kCanonical));
  auto doc = nlohmann::json::parse(allocation_document(r.allocation, "drf", {{"halt_reason", "all-saturated"}}));
  CHECK(doc["schema_version"] == kOutputSchemaVersion);
  CHECK(doc["algorithm"] == "drf");
  CHECK(doc["halt_reason"] == "all-saturated");
  CHECK(doc["tasks"]["A"] == 3);
  CHECK(doc["per_user_amounts"]["B"] == nlohmann::json::array({6, 2}));
  CHECK(doc["residual"] == nlohmann::json::array({0, 4}));
}

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

#include <map>
#include <random>
#include <set>

#include "doctest.h"

#include "drfkit/drf.hpp"
#include "drfkit/shares.hpp"
#include "oracles.hpp"

using namespace drfkit;

namespace {

Scenario canonical() { return {{9, 18}, {{"A", {1, 4}, std::nullopt}, {"B", {3, 1}, std::nullopt}}}; }
Scenario pareto() { return {{59, 19}, {{"A", {1, 4}, std::nullopt}, {"B", {3, 1}, std::nullopt}}}; }

DrfOptions traced(bool removal) {
  DrfOptions o;
  o.remove_saturated = removal;
  o.collect_trace = true;
  return o;
}

}  // namespace

TEST_CASE("canonical trace") {
  auto r = drf_allocate(canonical(), traced(true));
  std::vector<std::string> order;
  for (const auto& step : r.trace.steps) order.push_back(step.user);
  CHECK(order == std::vector<std::string>{"B", "A", "A", "B", "A"});
  CHECK(r.trace.steps[0].allocated_share == Rational(1, 3));
  CHECK(r.trace.steps[2].allocated_share == Rational(4, 9));
  CHECK(r.allocation.tasks.at("A") == 3);
  CHECK(r.allocation.tasks.at("B") == 2);
  CHECK(r.allocation.per_user_amounts.at("A") == ResourceVector{3, 12});
  CHECK(r.allocation.per_user_amounts.at("B") == ResourceVector{6, 2});
  CHECK(r.allocation.residual == ResourceVector{0, 4});
  CHECK(r.trace.halt_reason == HaltReason::kAllSaturated);
  CHECK(r.trace.iterations == 5);
}

TEST_CASE("pareto scenario halts early without removal") {
  DrfOptions strict = traced(true);
  strict.strict_paper_mode = true;
  auto r = drf_allocate(pareto(), strict);
  CHECK(r.trace.iterations == 10);
  CHECK(r.allocation.tasks.at("A") == 2);
  CHECK(r.allocation.tasks.at("B") == 8);
  CHECK(r.allocation.per_user_amounts.at("A") == ResourceVector{2, 8});
  CHECK(r.allocation.per_user_amounts.at("B") == ResourceVector{24, 8});
  CHECK(r.allocation.residual == ResourceVector{33, 3});
  CHECK(r.trace.halt_reason == HaltReason::kResourceExhausted);

  auto same = drf_allocate(pareto(), traced(false));
  CHECK(same.allocation.tasks == r.allocation.tasks);
}

TEST_CASE("pareto scenario with removal keeps feeding B") {
  auto r = drf_allocate(pareto(), traced(true));
  CHECK(r.allocation.tasks.at("A") == 2);
  CHECK(r.allocation.tasks.at("B") == 11);
  CHECK(r.allocation.per_user_amounts.at("B") == ResourceVector{33, 11});
  CHECK(r.allocation.residual == ResourceVector{24, 0});
  REQUIRE(r.trace.saturations.size() == 2);
  CHECK(r.trace.saturations[0].user == "A");
  CHECK(r.trace.saturations[0].after_iteration == 10);
  CHECK(r.trace.halt_reason == HaltReason::kAllSaturated);
}

TEST_CASE("predicted iterations") {
  CHECK(predicted_iterations(canonical()) == Rational(9, 2));
  Scenario one{{10}, {{"A", {10}, std::nullopt}}};
  CHECK(predicted_iterations(one) == Rational(1));
  Scenario twice = canonical();
  for (auto& c : twice.resources) c *= 2;
  CHECK(predicted_iterations(twice) == Rational(9));
  Scenario unused{{10, 5}, {{"A", {1, 0}, std::nullopt}}};
  CHECK(predicted_iterations(unused) == Rational(10));
}

TEST_CASE("halt reason names round-trip") {
  for (auto h : {HaltReason::kResourceExhausted, HaltReason::kAllSaturated}) CHECK(parse_halt_reason(to_string(h)) == h);
  CHECK_THROWS(parse_halt_reason("tired"));
}

TEST_CASE("invalid scenarios are rejected") {
  Scenario s = canonical();
  s.users[1].demand = {0, 0};
  CHECK_THROWS_AS(drf_allocate(s), ValidationError);
}

TEST_CASE("property: heap allocator matches the global-sort oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 1500; ++trial) {
    auto s = oracle::random_scenario(rng, 6, 4, 9, 60, trial % 2 == 0 ? 1 : 0);
    for (bool removal : {true, false}) {
      std::size_t iters = 0;
      auto expected = oracle::drf_by_sorting(s, removal, &iters);
      DrfOptions o;
      o.remove_saturated = removal;
      auto r = drf_allocate(s, o);
      CHECK(tasks_in_order(s, r.allocation) == expected);
      CHECK(r.trace.iterations == iters);
    }
  }
}

TEST_CASE("property: one resource reduces to max-min fairness over amounts") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    auto s = oracle::random_scenario(rng, 6, 1, 9, 80);
    auto r = drf_allocate(s);
    CHECK(tasks_in_order(s, r.allocation) == oracle::single_resource_max_min(s));
  }
}

TEST_CASE("property: each step goes to a user with the minimal allocated share") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    auto s = oracle::random_scenario(rng, 5, 3, 9, 50);
    auto r = drf_allocate(s, traced(true));
    auto ds = dominant_shares(s);
    std::map<UserId, std::int64_t> tasks;
    std::set<UserId> excluded;
    std::size_t next_saturation = 0;
    for (const auto& step : r.trace.steps) {
      while (next_saturation < r.trace.saturations.size() &&
             r.trace.saturations[next_saturation].after_iteration < step.iteration) {
        excluded.insert(r.trace.saturations[next_saturation++].user);
      }
      const auto& chosen = s.users[s.index_of(step.user)];
      Rational level = ds[s.index_of(step.user)].share * Rational(tasks[step.user]);
      for (std::size_t i = 0; i < s.users.size(); ++i) {
        if (excluded.count(s.users[i].id)) continue;
        CHECK(level <= ds[i].share * Rational(tasks[s.users[i].id]));
      }
      ++tasks[chosen.id];
      CHECK(step.allocated_share == ds[s.index_of(step.user)].share * Rational(tasks[step.user]));
    }
    for (const auto& [id, count] : tasks) CHECK(r.allocation.tasks.at(id) == count);
    for (std::size_t q = 0; q < s.resources.size(); ++q) CHECK(r.allocation.residual[q] >= 0);
  }
}

TEST_CASE("runs are deterministic") {
  std::mt19937_64 rng(24);
  auto s = oracle::random_scenario(rng, 8, 4, 9, 100);
  auto a = drf_allocate(s, traced(true));
  auto b = drf_allocate(s, traced(true));
  CHECK(a.trace.steps == b.trace.steps);
  CHECK(format_trace(a.trace) == format_trace(b.trace));
}

TEST_CASE("trace text round-trips") {
  auto r = drf_allocate(pareto(), traced(true));
  auto text = format_trace(r.trace);
  CHECK(text.rfind("1\tA\t4/19\n2\tB\t1/19\n", 0) == 0);
  auto back = parse_trace(text);
  CHECK(back.steps == r.trace.steps);
  CHECK(back.halt_reason == r.trace.halt_reason);
  CHECK(back.iterations == r.trace.iterations);
  CHECK_THROWS(parse_trace("1\tA\n"));
}

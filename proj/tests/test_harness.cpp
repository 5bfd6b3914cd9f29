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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "drfkit/drf.hpp"
#include "drfkit/harness.hpp"
#include "drfkit/pdrf.hpp"

using namespace drfkit;

namespace {

Scenario canonical() { return {{9, 18}, {{"A", {1, 4}, std::nullopt}, {"B", {3, 1}, std::nullopt}}}; }
Scenario pareto() { return {{59, 19}, {{"A", {1, 4}, std::nullopt}, {"B", {3, 1}, std::nullopt}}}; }

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n_users = 40;
  c.n_resources = 3;
  c.demand_interval = {1, 10};
  c.reserve_interval = {500, 1000};
  c.trials = 12;
  c.seed = 7;
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("intervals") {
  CHECK(parse_interval("1:10") == Interval{1, 10});
  CHECK(parse_interval("5:5") == Interval{5, 5});
  CHECK_THROWS(parse_interval("1-10"));
  CHECK_THROWS(parse_interval("a:b"));
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate_config(small_config()));
  auto c = small_config();
  c.n_users = 0;
  CHECK_THROWS(validate_config(c));
  c = small_config();
  c.reserve_interval = {0, 10};
  CHECK_THROWS(validate_config(c));
  c = small_config();
  c.demand_interval = {-1, 3};
  CHECK_THROWS(validate_config(c));
  c = small_config();
  c.demand_interval = parse_interval("10:1");
  CHECK_THROWS(validate_config(c));
}

TEST_CASE("generated scenarios are deterministic and in range") {
  auto c = small_config();
  auto a = generate_scenario(c, 3);
  auto b = generate_scenario(c, 3);
  CHECK(a.resources == b.resources);
  for (std::size_t i = 0; i < a.users.size(); ++i) CHECK(a.users[i].demand == b.users[i].demand);
  CHECK(generate_scenario(c, 4).resources != a.resources);
  CHECK(a.num_users() == 40);
  CHECK(a.num_resources() == 3);
  for (auto r : a.resources) CHECK((r >= 500 && r <= 1000));
  for (const auto& u : a.users) {
    for (auto d : u.demand) CHECK((d >= 1 && d <= 10));
  }
  CHECK(validate_scenario(a).empty());
}

TEST_CASE("degenerate intervals fix every entry") {
  auto c = small_config();
  c.demand_interval = {3, 3};
  c.reserve_interval = {900, 900};
  auto s = generate_scenario(c, 0);
  for (auto r : s.resources) CHECK(r == 900);
  for (const auto& u : s.users) CHECK(u.demand == DemandVector{3, 3, 3});
}

TEST_CASE("zero demands are allowed but all-zero rows are redrawn") {
  auto c = small_config();
  c.demand_interval = {0, 1};
  c.n_resources = 2;
  for (std::size_t t = 0; t < 20; ++t) CHECK(validate_scenario(generate_scenario(c, t)).empty());
}

TEST_CASE("compare on the worked examples") {
  auto d = compare(drf_allocate(canonical()).allocation, pdrf_allocate(canonical()).allocation);
  CHECK(d == std::map<UserId, std::int64_t>{{"A", 0}, {"B", 0}});
  auto p = compare(drf_allocate(pareto()).allocation, pdrf_allocate(pareto()).allocation);
  CHECK(p == std::map<UserId, std::int64_t>{{"A", 0}, {"B", -2}});
}

TEST_CASE("bucketing") {
  auto t = bucket_deltas({{"a", -1}, {"b", -2}, {"c", -5}, {"d", 0}, {"e", 1}, {"f", 1}, {"g", 3}});
  CHECK(t.under_1 == 1);
  CHECK(t.under_2 == 1);
  CHECK(t.under_gt2 == 1);
  CHECK(t.max_under == 5);
  CHECK(t.over_1 == 2);
  CHECK(t.over_2 == 0);
  CHECK(t.over_gt2 == 1);
  CHECK(t.max_over == 3);
  CHECK(t.exact == 1);
  CHECK(t.total_under() == 3);
  CHECK(t.total_over() == 3);
}

TEST_CASE("summary uses trial means and the sample standard deviation") {
  std::vector<TrialDeviation> trials(3);
  trials[0].under_1 = 2;
  trials[1].under_1 = 4;
  trials[2].under_1 = 9;
  trials[2].under_2 = 1;
  trials[1].max_under = 2;
  trials[0].over_1 = 1;
  auto s = summarize(trials);
  CHECK(s.under_1 == doctest::Approx(5.0));
  CHECK(s.under_2 == doctest::Approx(1.0 / 3));
  CHECK(s.under_max == 2);
  // totals 2, 4, 10
  const double mean = 16.0 / 3;
  const double var = ((2 - mean) * (2 - mean) + (4 - mean) * (4 - mean) + (10 - mean) * (10 - mean)) / 2;
  CHECK(s.under_avg == doctest::Approx(mean));
  CHECK(s.under_std == doctest::Approx(std::sqrt(var)));
  CHECK(s.over_avg == doctest::Approx(1.0 / 3));

  std::vector<TrialDeviation> one{trials[2]};
  auto single = summarize(one);
  CHECK(single.under_1 == doctest::Approx(9.0));
  CHECK(single.under_avg == doctest::Approx(10.0));
  CHECK(single.under_std == 0.0);
  CHECK(summarize({}) == DeviationSummary{});
}

TEST_CASE("experiments are reproducible and independent of the thread count") {
  auto c = small_config();
  c.threads = 1;
  auto a = run_experiment(c);
  c.threads = 4;
  auto b = run_experiment(c);
  CHECK(a.trials == b.trials);
  CHECK(a.summary == b.summary);
  REQUIRE(a.trials.size() == 12);
  for (const auto& t : a.trials) {
    CHECK(t.total_under() + t.total_over() + t.exact == 40);
    CHECK(t.drf_iterations > 0);
  }
}

TEST_CASE("each trial matches a direct run of both allocators") {
  auto c = small_config();
  auto stats = run_experiment(c);
  for (std::size_t t = 0; t < c.trials; ++t) {
    auto s = generate_scenario(c, t);
    auto direct = bucket_deltas(compare(drf_allocate(s).allocation, pdrf_allocate(s).allocation));
    CHECK(direct.under_1 == stats.trials[t].under_1);
    CHECK(direct.max_under == stats.trials[t].max_under);
    CHECK(direct.over_1 == stats.trials[t].over_1);
    CHECK(direct.exact == stats.trials[t].exact);
  }
}

TEST_CASE("table and document exports") {
  auto c = small_config();
  c.trials = 3;
  auto stats = run_experiment(c);
  auto table = stats_table(stats);
  CHECK(table.rfind(std::string(kStatsTableHeader) + "\n", 0) == 0);
  CHECK(table.find("\n1,10,") != std::string::npos);

  DeviationStats empty;
  empty.config = c;
  CHECK(stats_table(empty) == std::string(kStatsTableHeader) + "\n");

  auto doc = stats_document(stats);
  auto back = parse_stats_document(doc);
  CHECK(back.trials == stats.trials);
  CHECK(back.summary == stats.summary);
  CHECK(back.config.seed == c.seed);
  CHECK(stats_document(back) == doc);
  CHECK_THROWS(parse_stats_document("{}"));

  auto dir = std::filesystem::temp_directory_path() / "drfkit_harness_test";
  std::filesystem::remove_all(dir);
  export_stats(stats, dir);
  auto first_csv = slurp(dir / "stats.csv");
  auto first_json = slurp(dir / "stats.json");
  export_stats(run_experiment(c), dir);
  CHECK(slurp(dir / "stats.csv") == first_csv);
  CHECK(slurp(dir / "stats.json") == first_json);
  CHECK(first_json == doc);
  std::filesystem::remove_all(dir);
}

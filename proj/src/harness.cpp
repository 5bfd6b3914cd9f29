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

#include "drfkit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "drfkit/pdrf.hpp"

namespace drfkit {

using nlohmann::json;

Interval parse_interval(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("interval must look like lo:hi, got '" + text + "'");
  Interval out;
  std::size_t used = 0;
  try {
    const auto lo_text = text.substr(0, colon);
    const auto hi_text = text.substr(colon + 1);
    out.lo = std::stoll(lo_text, &used);
    if (used != lo_text.size()) throw std::invalid_argument(lo_text);
    out.hi = std::stoll(hi_text, &used);
    if (used != hi_text.size()) throw std::invalid_argument(hi_text);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("interval must look like lo:hi, got '" + text + "'");
  }
  return out;
}

void validate_config(const ExperimentConfig& config) {
  if (config.n_users == 0) throw std::invalid_argument("n_users must be positive");
  if (config.n_resources == 0) throw std::invalid_argument("n_resources must be positive");
  if (config.trials == 0) throw std::invalid_argument("trials must be positive");
  const auto& d = config.demand_interval;
  const auto& r = config.reserve_interval;
  if (d.lo > d.hi) throw std::invalid_argument("demand interval has lo > hi");
  if (r.lo > r.hi) throw std::invalid_argument("reserve interval has lo > hi");
  if (d.lo < 0) throw std::invalid_argument("demand interval must be non-negative");
  if (d.hi < 1) throw std::invalid_argument("demand interval admits no positive demand");
  if (r.lo < 1) throw std::invalid_argument("reserve interval must be positive");
}

Scenario generate_scenario(const ExperimentConfig& config, std::size_t trial_index) {
  validate_config(config);
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(trial_index), static_cast<std::uint32_t>(trial_index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::int64_t> reserve(config.reserve_interval.lo, config.reserve_interval.hi);
  std::uniform_int_distribution<std::int64_t> demand(config.demand_interval.lo, config.demand_interval.hi);

  Scenario scenario;
  scenario.resources.resize(config.n_resources);
  for (auto& r : scenario.resources) r = reserve(rng);

  const int width = static_cast<int>(std::to_string(config.n_users - 1).size());
  scenario.users.resize(config.n_users);
  for (std::size_t i = 0; i < config.n_users; ++i) {
    auto& user = scenario.users[i];
    char id[32];
    std::snprintf(id, sizeof id, "u%0*zu", width, i);
    user.id = id;
    user.demand.resize(config.n_resources);
    do {
      for (auto& d : user.demand) d = demand(rng);
    } while (std::all_of(user.demand.begin(), user.demand.end(), [](std::int64_t d) { return d == 0; }));
  }
  return scenario;
}

std::map<UserId, std::int64_t> compare(const Allocation& reference, const Allocation& candidate) {
  if (reference.tasks.size() != candidate.tasks.size()) throw std::invalid_argument("allocations cover different users");
  std::map<UserId, std::int64_t> out;
  auto it = candidate.tasks.begin();
  for (const auto& [id, tasks] : reference.tasks) {
    if (it->first != id) throw std::invalid_argument("allocations cover different users ('" + id + "')");
    out.emplace_hint(out.end(), id, it->second - tasks);
    ++it;
  }
  return out;
}

TrialDeviation bucket_deltas(const std::map<UserId, std::int64_t>& deltas) {
  TrialDeviation out;
  for (const auto& [id, delta] : deltas) {
    if (delta == 0) {
      ++out.exact;
    } else if (delta < 0) {
      const auto size = -delta;
      (size == 1 ? out.under_1 : size == 2 ? out.under_2 : out.under_gt2)++;
      out.max_under = std::max(out.max_under, size);
    } else {
      (delta == 1 ? out.over_1 : delta == 2 ? out.over_2 : out.over_gt2)++;
      out.max_over = std::max(out.max_over, delta);
    }
  }
  return out;
}

namespace {

struct MeanStd {
  double mean = 0;
  double std = 0;
};

template <typename Get>
MeanStd mean_std(std::span<const TrialDeviation> trials, Get get) {
  MeanStd out;
  if (trials.empty()) return out;
  double sum = 0;
  for (const auto& t : trials) sum += static_cast<double>(get(t));
  out.mean = sum / static_cast<double>(trials.size());
  if (trials.size() < 2) return out;
  double sq = 0;
  for (const auto& t : trials) {
    const double d = static_cast<double>(get(t)) - out.mean;
    sq += d * d;
  }
  out.std = std::sqrt(sq / static_cast<double>(trials.size() - 1));
  return out;
}

TrialDeviation run_trial(const ExperimentConfig& config, std::size_t trial_index) {
  const auto scenario = generate_scenario(config, trial_index);
  const auto reference = drf_allocate(scenario, config.drf_options);
  const auto pdrf = pdrf_allocate(scenario);
  const auto candidate = config.apply_finishing_pass ? finishing_pass(scenario, pdrf) : pdrf.allocation;

  auto trial = bucket_deltas(compare(reference.allocation, candidate));
  trial.drf_iterations = static_cast<std::int64_t>(reference.trace.iterations);
  trial.drf_heap_operations = static_cast<std::int64_t>(reference.counters.heap_pushes + reference.counters.heap_pops);
  trial.pdrf_operations = static_cast<std::int64_t>(pdrf.counters.total());

  const auto exact = tasks_in_order(scenario, pdrf.allocation);
  auto mismatches = [&exact](const PdrfFloatResult& f) {
    std::int64_t count = 0;
    for (std::size_t i = 0; i < exact.size(); ++i) count += f.tasks[i] != exact[i];
    return count;
  };
  trial.float_unsimplified_mismatches = mismatches(pdrf_allocate_float(scenario, KForm::kUnsimplified));
  trial.float_simplified_mismatches = mismatches(pdrf_allocate_float(scenario, KForm::kSimplified));
  return trial;
}

}  // namespace

DeviationSummary summarize(std::span<const TrialDeviation> trials) {
  DeviationSummary s;
  s.under_1 = mean_std(trials, [](const auto& t) { return t.under_1; }).mean;
  s.under_2 = mean_std(trials, [](const auto& t) { return t.under_2; }).mean;
  s.under_gt2 = mean_std(trials, [](const auto& t) { return t.under_gt2; }).mean;
  s.over_1 = mean_std(trials, [](const auto& t) { return t.over_1; }).mean;
  s.over_2 = mean_std(trials, [](const auto& t) { return t.over_2; }).mean;
  s.over_gt2 = mean_std(trials, [](const auto& t) { return t.over_gt2; }).mean;
  const auto under = mean_std(trials, [](const auto& t) { return t.total_under(); });
  const auto over = mean_std(trials, [](const auto& t) { return t.total_over(); });
  s.under_avg = under.mean;
  s.under_std = under.std;
  s.over_avg = over.mean;
  s.over_std = over.std;
  for (const auto& t : trials) {
    s.under_max = std::max(s.under_max, t.max_under);
    s.over_max = std::max(s.over_max, t.max_over);
  }
  return s;
}

DeviationStats run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  DeviationStats stats;
  stats.config = config;
  stats.trials.resize(config.trials);

  std::size_t workers = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, config.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t t = next++; t < config.trials; t = next++) {
      try {
        stats.trials[t] = run_trial(config, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.trials;
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  stats.summary = summarize(stats.trials);
  return stats;
}

namespace {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

json config_to_json(const ExperimentConfig& c) {
  return {
      {"n_users", c.n_users},
      {"n_resources", c.n_resources},
      {"demand_interval", {c.demand_interval.lo, c.demand_interval.hi}},
      {"reserve_interval", {c.reserve_interval.lo, c.reserve_interval.hi}},
      {"trials", c.trials},
      {"seed", c.seed},
      {"apply_finishing_pass", c.apply_finishing_pass},
      {"drf_options",
       {{"remove_saturated", c.drf_options.remove_saturated},
        {"strict_paper_mode", c.drf_options.strict_paper_mode}}},
  };
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig c;
  c.n_users = j.at("n_users").get<std::size_t>();
  c.n_resources = j.at("n_resources").get<std::size_t>();
  c.demand_interval = {j.at("demand_interval").at(0).get<std::int64_t>(), j.at("demand_interval").at(1).get<std::int64_t>()};
  c.reserve_interval = {j.at("reserve_interval").at(0).get<std::int64_t>(),
                        j.at("reserve_interval").at(1).get<std::int64_t>()};
  c.trials = j.at("trials").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.apply_finishing_pass = j.at("apply_finishing_pass").get<bool>();
  c.drf_options.remove_saturated = j.at("drf_options").at("remove_saturated").get<bool>();
  c.drf_options.strict_paper_mode = j.at("drf_options").at("strict_paper_mode").get<bool>();
  return c;
}

// Column name and member pointer for every per-trial array.
const std::vector<std::pair<const char*, std::int64_t TrialDeviation::*>>& trial_fields() {
  static const std::vector<std::pair<const char*, std::int64_t TrialDeviation::*>> fields = {
      {"under_1", &TrialDeviation::under_1},
      {"under_2", &TrialDeviation::under_2},
      {"under_gt2", &TrialDeviation::under_gt2},
      {"max_under", &TrialDeviation::max_under},
      {"over_1", &TrialDeviation::over_1},
      {"over_2", &TrialDeviation::over_2},
      {"over_gt2", &TrialDeviation::over_gt2},
      {"max_over", &TrialDeviation::max_over},
      {"exact", &TrialDeviation::exact},
      {"drf_iterations", &TrialDeviation::drf_iterations},
      {"drf_heap_operations", &TrialDeviation::drf_heap_operations},
      {"pdrf_operations", &TrialDeviation::pdrf_operations},
      {"float_unsimplified_mismatches", &TrialDeviation::float_unsimplified_mismatches},
      {"float_simplified_mismatches", &TrialDeviation::float_simplified_mismatches},
  };
  return fields;
}

}  // namespace

std::string stats_table(const DeviationStats& stats) {
  std::string out = std::string(kStatsTableHeader) + "\n";
  if (stats.trials.empty()) return out;
  const auto& s = stats.summary;
  const auto& c = stats.config;
  std::ostringstream row;
  row << c.demand_interval.lo << ',' << c.demand_interval.hi << ',' << format_number(s.under_1) << ','
      << format_number(s.under_2) << ',' << format_number(s.under_gt2) << ',' << s.under_max << ','
      << format_number(s.under_avg) << ',' << format_number(s.under_std) << ',' << format_number(s.over_1) << ','
      << format_number(s.over_2) << ',' << format_number(s.over_gt2) << ',' << s.over_max << ','
      << format_number(s.over_avg) << ',' << format_number(s.over_std) << '\n';
  return out + row.str();
}

std::string stats_document(const DeviationStats& stats) {
  const auto& s = stats.summary;
  json trials = json::object();
  for (const auto& [name, member] : trial_fields()) {
    json column = json::array();
    for (const auto& t : stats.trials) column.push_back(t.*member);
    trials[name] = std::move(column);
  }
  json doc = {
      {"schema_version", kStatsSchemaVersion},
      {"config", config_to_json(stats.config)},
      {"seed", stats.config.seed},
      {"reference", "drf"},
      {"candidate", stats.config.apply_finishing_pass ? "pdrf+finishing-pass" : "pdrf"},
      {"std_estimator", "sample"},
      {"avg_definition", "mean over trials of the number of users deviating in that direction"},
      {"summary",
       {{"under_1", s.under_1},
        {"under_2", s.under_2},
        {"under_gt2", s.under_gt2},
        {"under_max", s.under_max},
        {"under_avg", s.under_avg},
        {"under_std", s.under_std},
        {"over_1", s.over_1},
        {"over_2", s.over_2},
        {"over_gt2", s.over_gt2},
        {"over_max", s.over_max},
        {"over_avg", s.over_avg},
        {"over_std", s.over_std}}},
      {"trials", std::move(trials)},
  };
  return doc.dump(2) + "\n";
}

DeviationStats parse_stats_document(const std::string& text) {
  const auto doc = json::parse(text);
  if (doc.at("schema_version").get<int>() != kStatsSchemaVersion) {
    throw std::invalid_argument("unsupported stats schema version");
  }
  DeviationStats stats;
  stats.config = config_from_json(doc.at("config"));
  const auto& trials = doc.at("trials");
  const auto count = trials.at("under_1").size();
  stats.trials.resize(count);
  for (const auto& [name, member] : trial_fields()) {
    const auto& column = trials.at(name);
    if (column.size() != count) throw std::invalid_argument(std::string("ragged per-trial array '") + name + "'");
    for (std::size_t t = 0; t < count; ++t) stats.trials[t].*member = column[t].get<std::int64_t>();
  }
  stats.summary = summarize(stats.trials);
  return stats;
}

void export_stats(const DeviationStats& stats, const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create " + directory.string() + ": " + ec.message());
  auto write = [](const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing " + path.string());
  };
  write(directory / "stats.csv", stats_table(stats));
  write(directory / "stats.json", stats_document(stats));
}

}  // namespace drfkit

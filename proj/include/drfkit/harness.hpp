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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "drfkit/drf.hpp"
#include "drfkit/scenario.hpp"

namespace drfkit {

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Parses "lo:hi".
Interval parse_interval(const std::string& text);

struct ExperimentConfig {
  std::size_t n_users = 1000;
  std::size_t n_resources = 10;
  Interval demand_interval{1, 10};
  Interval reserve_interval{50000, 100000};
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  DrfOptions drf_options{};
  bool apply_finishing_pass = false;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
  std::size_t threads = 0;
};

/// Throws std::invalid_argument describing the first bad field.
void validate_config(const ExperimentConfig& config);

/// Uniform-inclusive demands and reserves; a pure function of
/// (seed, trial_index). All-zero demand rows are redrawn.
Scenario generate_scenario(const ExperimentConfig& config, std::size_t trial_index);

/// candidate.tasks[i] - reference.tasks[i]; negative means underallocation.
std::map<UserId, std::int64_t> compare(const Allocation& reference, const Allocation& candidate);

struct TrialDeviation {
  std::int64_t under_1 = 0;
  std::int64_t under_2 = 0;
  std::int64_t under_gt2 = 0;
  std::int64_t max_under = 0;
  std::int64_t over_1 = 0;
  std::int64_t over_2 = 0;
  std::int64_t over_gt2 = 0;
  std::int64_t max_over = 0;
  std::int64_t exact = 0;

  // Informative only.
  std::int64_t drf_iterations = 0;
  std::int64_t drf_heap_operations = 0;
  std::int64_t pdrf_operations = 0;
  /// Users whose double-precision task count differs from the exact one.
  std::int64_t float_unsimplified_mismatches = 0;
  std::int64_t float_simplified_mismatches = 0;

  std::int64_t total_under() const { return under_1 + under_2 + under_gt2; }
  std::int64_t total_over() const { return over_1 + over_2 + over_gt2; }

  friend bool operator==(const TrialDeviation&, const TrialDeviation&) = default;
};

/// Buckets one set of deltas.
TrialDeviation bucket_deltas(const std::map<UserId, std::int64_t>& deltas);

/// Table-layout aggregate over trials. Means are over trials; standard
/// deviations use the sample (n - 1) estimator and are 0 below two trials.
struct DeviationSummary {
  double under_1 = 0, under_2 = 0, under_gt2 = 0;
  std::int64_t under_max = 0;
  double under_avg = 0, under_std = 0;
  double over_1 = 0, over_2 = 0, over_gt2 = 0;
  std::int64_t over_max = 0;
  double over_avg = 0, over_std = 0;

  friend bool operator==(const DeviationSummary&, const DeviationSummary&) = default;
};

DeviationSummary summarize(std::span<const TrialDeviation> trials);

struct DeviationStats {
  ExperimentConfig config;
  std::vector<TrialDeviation> trials;
  DeviationSummary summary;
};

/// Runs every trial: DRF reference, PDRF candidate (plus the finishing pass
/// when configured), bucketed deltas, aggregate.
DeviationStats run_experiment(const ExperimentConfig& config);

inline constexpr int kStatsSchemaVersion = 1;
inline constexpr const char* kStatsTableHeader =
    "interval_lo,interval_hi,under_1,under_2,under_gt2,under_max,under_avg,under_std,"
    "over_1,over_2,over_gt2,over_max,over_avg,over_std";

/// Header plus one row; header only when there are no trials.
std::string stats_table(const DeviationStats& stats);
/// Structured document: schema version, config echo, summary, per-trial arrays.
std::string stats_document(const DeviationStats& stats);
/// Reads a stats_document back; the summary is recomputed from the trials.
DeviationStats parse_stats_document(const std::string& text);

/// Writes <directory>/stats.csv and <directory>/stats.json, creating the
/// directory if needed. Throws std::runtime_error on I/O failure.
void export_stats(const DeviationStats& stats, const std::filesystem::path& directory);

}  // namespace drfkit

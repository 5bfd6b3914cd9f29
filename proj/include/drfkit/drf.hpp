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
#include <string>
#include <string_view>
#include <vector>

#include "drfkit/rational.hpp"
#include "drfkit/scenario.hpp"

namespace drfkit {

struct DrfOptions {
  /// Exclude a user whose next task no longer fits and keep going, instead
  /// of halting the whole loop.
  bool remove_saturated = true;
  /// Literal main loop: halts at the first task that does not fit.
  /// Overrides remove_saturated.
  bool strict_paper_mode = false;
  bool collect_trace = false;

  bool removes_saturated() const { return remove_saturated && !strict_paper_mode; }
};

enum class HaltReason {
  /// The least-allocated user's next task did not fit (strict mode only).
  kResourceExhausted,
  /// Every user has been marked saturated.
  kAllSaturated,
};

const char* to_string(HaltReason reason);
HaltReason parse_halt_reason(std::string_view text);

struct DrfStep {
  std::size_t iteration = 0;  // 1-based
  UserId user;
  Rational allocated_share;  // after the step

  friend bool operator==(const DrfStep&, const DrfStep&) = default;
};

struct DrfSaturation {
  std::size_t after_iteration = 0;  // number of allocations made before the user was excluded
  UserId user;

  friend bool operator==(const DrfSaturation&, const DrfSaturation&) = default;
};

struct DrfTrace {
  std::vector<DrfStep> steps;
  std::vector<DrfSaturation> saturations;
  HaltReason halt_reason = HaltReason::kAllSaturated;
  /// Allocation steps performed, recorded even when steps are not collected.
  std::size_t iterations = 0;
};

/// Instrumentation for the informative operation-count comparison.
struct DrfCounters {
  std::uint64_t heap_pushes = 0;
  std::uint64_t heap_pops = 0;
  std::uint64_t fit_checks = 0;
};

struct DrfResult {
  Allocation allocation;
  DrfTrace trace;
  DrfCounters counters;
};

/// Progressive filling over dominant shares. The next user is the one with
/// the least allocated dominant share; ties go to the larger per-task
/// dominant share, then to the smaller id.
DrfResult drf_allocate(const Scenario& scenario, const DrfOptions& options = {});

/// min_r capacity_r / mean_i demand_ir. Resources nobody demands are skipped.
/// The per-step log(n) heap cost is not folded in.
Rational predicted_iterations(const Scenario& scenario);

/// One line per step, "<iter>\t<user>\t<share>", then "halt\t<reason>".
std::string format_trace(const DrfTrace& trace);
/// Inverse of format_trace (saturation events are not part of the format).
DrfTrace parse_trace(std::string_view text);

}  // namespace drfkit

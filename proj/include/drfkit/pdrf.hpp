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

#include <cstdint>
#include <map>
#include <vector>

#include "drfkit/rational.hpp"
#include "drfkit/scenario.hpp"

namespace drfkit {

/// Arithmetic performed by one precomputed allocation, grouped the way the
/// closed form is usually costed: all counts are linear in users x resources.
struct PdrfCounters {
  std::uint64_t multiplications = 0;
  std::uint64_t divisions = 0;
  std::uint64_t additions = 0;
  std::uint64_t comparisons = 0;

  std::uint64_t total() const { return multiplications + divisions + additions + comparisons; }
};

struct PdrfResult {
  /// Maximum number of cycle iterations the capacities admit, unfloored.
  Rational k;
  /// Largest per-task dominant share among the users.
  Rational ds_star;
  Allocation allocation;
  /// floor(k * ds_star / ds_i); equals allocation.tasks.
  std::map<UserId, std::int64_t> per_user_multiplier;
  PdrfCounters counters;
};

/// k = min_r capacity_r / sum_i (ds* / ds_i) * d_ir.
///
/// Weighted scenarios need normalized weights (sum over users of w_ir = 1
/// for every r), otherwise the ValidationError names the offending resource.
Rational pdrf_k(const Scenario& scenario);

/// k' = min_r capacity_r / sum_i d_ir / ds_i. Exactly k' = k * ds*.
Rational pdrf_k_simplified(const Scenario& scenario);

/// tasks_i = floor(k * ds* / ds_i). Never exceeds any capacity.
PdrfResult pdrf_allocate(const Scenario& scenario);

/// One ascending sweep over users by allocated dominant share (ties: larger
/// per-task share, then id); each user gets at most one more task if it fits.
Allocation finishing_pass(const Scenario& scenario, const PdrfResult& result);

enum class KForm { kUnsimplified, kSimplified };

/// Same closed form evaluated in double precision, for measuring how far the
/// floating-point routes drift from the exact one.
struct PdrfFloatResult {
  double k = 0.0;
  std::vector<std::int64_t> tasks;  // scenario order
};

PdrfFloatResult pdrf_allocate_float(const Scenario& scenario, KForm form);

}  // namespace drfkit

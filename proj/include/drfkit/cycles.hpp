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
#include <map>
#include <span>
#include <vector>

#include "drfkit/rational.hpp"
#include "drfkit/scenario.hpp"

namespace drfkit {

/// Smallest positive q with q / v integral for every v:
/// lcm(numerators) / gcd(denominators) over lowest-term inputs.
Rational rational_lcm(std::span<const Rational> values);

/// When a user's ratio ds*/ds_i = a + p/q (0 < p < q), basic subcycle j
/// carries an extra turn for that user whenever ceil(j * p/q) steps up.
/// The pattern repeats every q subcycles and holds p extra turns.
struct ExtraOccurrencePattern {
  UserId user;
  Rational ratio;
  Rational fractional_part;
  BigInt period;  // q
  /// 1-based subcycle indices within the first period; truncated when the
  /// period is very long.
  std::vector<std::int64_t> extra_positions;
  /// Distances between consecutive extra turns inside the first period.
  std::vector<std::int64_t> gaps;
  bool truncated = false;
};

struct CycleProfile {
  Rational lcm_ds;
  BigInt full_length;
  std::map<UserId, BigInt> occurrences;
  std::int64_t basic_length = 0;
  std::map<UserId, std::int64_t> basic_occurrences;
  std::vector<ExtraOccurrencePattern> extra_occurrences;
};

CycleProfile cycle_profile(const Scenario& scenario);

/// Longest extra-occurrence listing kept per user in a CycleProfile.
inline constexpr std::int64_t kMaxListedExtraPositions = 1024;

struct CycleLayer {
  std::vector<UserId> active;
  /// Turns per cycle iteration used by this layer.
  std::map<UserId, std::int64_t> occurrences;
  /// floor(ds*/ds_i), for comparison with `occurrences`.
  std::map<UserId, std::int64_t> basic_occurrences;
  bool deviates_from_basic = false;
  Rational k;
  std::int64_t iterations = 0;
  ResourceVector consumed;
};

struct CycleDecomposition {
  std::vector<CycleLayer> layers;
  ResourceVector residual;
};

/// EXPERIMENTAL. Peels residual cycles: run as many whole cycles as fit,
/// drop the ds* users, repeat on what is left. Never used by an allocator.
///
/// A layer whose ratios ds*/ds_i are all integers is an exact cycle and uses
/// the ratios as turn counts. Otherwise the ds* users take one turn and every
/// other user takes ceil(ratio) - 1, the turns that precede ds*'s next one.
/// Layers report the basic-subcycle counts alongside so the difference
/// stays visible.
CycleDecomposition decompose_higher_order(const Scenario& scenario);

}  // namespace drfkit

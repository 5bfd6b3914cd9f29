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
#include <map>
#include <span>
#include <vector>

#include "drfkit/rational.hpp"
#include "drfkit/scenario.hpp"

namespace drfkit {

/// Fractional demand divided by the dominant share; the dominant entry is 1.
struct NormalizedDemand {
  std::vector<Rational> entries;
};

NormalizedDemand normalize(const DemandVector& demand, const ResourceVector& capacities);

struct EdrfRoundResult {
  Rational x;
  std::vector<std::size_t> saturated_resources;
};

/// Largest x with x * sum_i d_ir <= remaining_r for every resource r.
/// `remaining` holds the unallocated fraction of each resource.
EdrfRoundResult edrf_round(std::span<const NormalizedDemand> users, std::span<const Rational> remaining);

struct EdrfRound {
  Rational x;
  std::vector<UserId> active;
  std::vector<std::size_t> saturated_resources;
};

/// Divisible allocation. `shares` are dominant-share fractions and `amounts`
/// absolute resource amounts, both exact.
struct DivisibleAllocation {
  std::map<UserId, Rational> shares;
  std::map<UserId, std::vector<Rational>> amounts;
  std::vector<EdrfRound> rounds;
};

/// Multi-round divisible allocation. After each round, every user that
/// demands a saturated resource leaves the active set.
DivisibleAllocation edrf_allocate(const Scenario& scenario);

}  // namespace drfkit

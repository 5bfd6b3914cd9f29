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
#include <stdexcept>
#include <vector>

#include "drfkit/rational.hpp"
#include "drfkit/scenario.hpp"

namespace drfkit {

/// Positive demand on a resource with zero capacity, or an all-zero demand.
class InfeasibleDemand : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// demand[r] / capacities[r] for each resource.
std::vector<Rational> fractional_demands(const DemandVector& demand, const ResourceVector& capacities);

struct DominantShare {
  Rational share;
  std::size_t resource = 0;

  friend bool operator==(const DominantShare&, const DominantShare&) = default;
};

/// max_r fd_r (or max_r fd_r / w_r when weighted); ties go to the lowest index.
DominantShare dominant_share(const DemandVector& demand, const ResourceVector& capacities,
                             const WeightVector* weight = nullptr);

/// Per-task dominant share of every user, in scenario order.
std::vector<DominantShare> dominant_shares(const Scenario& scenario);

}  // namespace drfkit

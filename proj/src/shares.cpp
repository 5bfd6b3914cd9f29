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

#include "drfkit/shares.hpp"

#include <string>

namespace drfkit {

std::vector<Rational> fractional_demands(const DemandVector& demand, const ResourceVector& capacities) {
  if (demand.size() != capacities.size()) {
    throw std::invalid_argument("demand has " + std::to_string(demand.size()) + " entries, capacities have " +
                                std::to_string(capacities.size()));
  }
  std::vector<Rational> out;
  out.reserve(demand.size());
  bool any_positive = false;
  for (std::size_t r = 0; r < demand.size(); ++r) {
    if (demand[r] < 0 || capacities[r] < 0) throw std::invalid_argument("negative demand or capacity");
    if (demand[r] == 0) {
      out.emplace_back(0);
      continue;
    }
    any_positive = true;
    if (capacities[r] == 0) {
      throw InfeasibleDemand("positive demand on resource " + std::to_string(r) + " with zero capacity");
    }
    out.emplace_back(demand[r], capacities[r]);
  }
  if (!any_positive) throw InfeasibleDemand("all-zero demand vector");
  return out;
}

DominantShare dominant_share(const DemandVector& demand, const ResourceVector& capacities,
                             const WeightVector* weight) {
  auto fd = fractional_demands(demand, capacities);
  if (weight) {
    if (weight->size() != fd.size()) throw std::invalid_argument("weight length mismatch");
    for (std::size_t r = 0; r < fd.size(); ++r) {
      if ((*weight)[r].sign() <= 0) throw std::invalid_argument("weights must be positive");
      fd[r] /= (*weight)[r];
    }
  }
  DominantShare best{fd[0], 0};
  for (std::size_t r = 1; r < fd.size(); ++r) {
    if (fd[r] > best.share) best = {fd[r], r};
  }
  return best;
}

std::vector<DominantShare> dominant_shares(const Scenario& scenario) {
  std::vector<DominantShare> out;
  out.reserve(scenario.num_users());
  for (const auto& user : scenario.users) {
    out.push_back(dominant_share(user.demand, scenario.resources, user.weight ? &*user.weight : nullptr));
  }
  return out;
}

}  // namespace drfkit

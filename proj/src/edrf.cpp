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

#include "drfkit/edrf.hpp"

#include <optional>
#include <stdexcept>

#include "drfkit/shares.hpp"

namespace drfkit {

NormalizedDemand normalize(const DemandVector& demand, const ResourceVector& capacities) {
  auto fd = fractional_demands(demand, capacities);
  auto ds = dominant_share(demand, capacities).share;
  NormalizedDemand out;
  out.entries.reserve(fd.size());
  for (auto& value : fd) out.entries.push_back(value / ds);
  return out;
}

EdrfRoundResult edrf_round(std::span<const NormalizedDemand> users, std::span<const Rational> remaining) {
  if (users.empty()) throw std::invalid_argument("edrf round needs at least one active user");
  const std::size_t m = remaining.size();
  std::optional<Rational> best;
  EdrfRoundResult out;
  for (std::size_t r = 0; r < m; ++r) {
    Rational column;
    for (const auto& user : users) {
      if (user.entries.size() != m) throw std::invalid_argument("normalized demand length mismatch");
      column += user.entries[r];
    }
    if (column.is_zero()) continue;
    Rational x = remaining[r] / column;
    if (!best || x < *best) {
      best = x;
      out.saturated_resources.assign(1, r);
    } else if (x == *best) {
      out.saturated_resources.push_back(r);
    }
  }
  if (!best) throw std::invalid_argument("active users demand nothing");
  out.x = *best;
  return out;
}

DivisibleAllocation edrf_allocate(const Scenario& scenario) {
  require_valid(scenario);
  if (scenario.weighted()) throw std::invalid_argument("weighted divisible allocation is not supported");
  const std::size_t n = scenario.num_users();
  const std::size_t m = scenario.num_resources();

  std::vector<NormalizedDemand> normalized;
  normalized.reserve(n);
  for (const auto& user : scenario.users) normalized.push_back(normalize(user.demand, scenario.resources));

  DivisibleAllocation out;
  for (const auto& user : scenario.users) {
    out.shares[user.id] = Rational(0);
    out.amounts[user.id] = std::vector<Rational>(m);
  }

  std::vector<Rational> remaining(m, Rational(1));
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  while (!active.empty()) {
    std::vector<NormalizedDemand> round_users;
    round_users.reserve(active.size());
    for (auto i : active) round_users.push_back(normalized[i]);
    auto round = edrf_round(round_users, remaining);

    EdrfRound record{round.x, {}, round.saturated_resources};
    std::vector<Rational> column(m);
    for (auto i : active) {
      const auto& id = scenario.users[i].id;
      record.active.push_back(id);
      out.shares[id] += round.x;
      auto& amounts = out.amounts[id];
      for (std::size_t r = 0; r < m; ++r) {
        const auto& d = normalized[i].entries[r];
        if (d.is_zero()) continue;
        column[r] += d;
        amounts[r] += round.x * d * Rational(scenario.resources[r]);
      }
    }
    for (std::size_t r = 0; r < m; ++r) remaining[r] -= round.x * column[r];
    out.rounds.push_back(std::move(record));

    std::vector<std::size_t> still_active;
    for (auto i : active) {
      bool blocked = false;
      for (std::size_t r = 0; r < m && !blocked; ++r) {
        blocked = !normalized[i].entries[r].is_zero() && remaining[r].is_zero();
      }
      if (!blocked) still_active.push_back(i);
    }
    active = std::move(still_active);
  }
  return out;
}

}  // namespace drfkit

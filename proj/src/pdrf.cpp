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

#include "drfkit/pdrf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "drfkit/shares.hpp"

namespace drfkit {

namespace {

struct Precomputed {
  std::vector<Rational> ds;
  Rational ds_star;
  Rational k;
};

// Dominant shares with the operation counts of the closed form: m*n
// divisions for the fractional demands, (m-1)*n comparisons per row,
// n-1 comparisons for ds*.
std::vector<Rational> counted_shares(const Scenario& scenario, PdrfCounters& counters, Rational& ds_star) {
  const auto n = scenario.num_users();
  const auto m = scenario.num_resources();
  std::vector<Rational> ds;
  ds.reserve(n);
  for (const auto& share : dominant_shares(scenario)) ds.push_back(share.share);
  counters.divisions += n * m;
  counters.comparisons += n * (m - 1);
  ds_star = ds[0];
  for (std::size_t i = 1; i < n; ++i) {
    if (ds[i] > ds_star) ds_star = ds[i];
  }
  counters.comparisons += n - 1;
  return ds;
}

Precomputed precompute(const Scenario& scenario, PdrfCounters& counters) {
  require_valid(scenario, WeightMode::kNormalized);
  const auto n = scenario.num_users();
  const auto m = scenario.num_resources();

  Precomputed out;
  out.ds = counted_shares(scenario, counters, out.ds_star);

  std::vector<Rational> ratio;
  ratio.reserve(n);
  for (const auto& ds : out.ds) ratio.push_back(out.ds_star / ds);
  counters.divisions += n;

  std::optional<Rational> k;
  for (std::size_t r = 0; r < m; ++r) {
    Rational column;
    for (std::size_t i = 0; i < n; ++i) {
      const auto d = scenario.users[i].demand[r];
      if (d == 0) continue;
      column += ratio[i] * Rational(d);
    }
    counters.multiplications += n;
    counters.additions += n - 1;
    if (column.is_zero()) continue;
    Rational candidate = Rational(scenario.resources[r]) / column;
    ++counters.divisions;
    if (k) ++counters.comparisons;
    if (!k || candidate < *k) k = candidate;
  }
  // Validation guarantees some positive demand, hence some positive column.
  out.k = *k;
  return out;
}

}  // namespace

Rational pdrf_k(const Scenario& scenario) {
  PdrfCounters counters;
  return precompute(scenario, counters).k;
}

Rational pdrf_k_simplified(const Scenario& scenario) {
  require_valid(scenario, WeightMode::kNormalized);
  const auto ds = dominant_shares(scenario);
  std::optional<Rational> k;
  for (std::size_t r = 0; r < scenario.num_resources(); ++r) {
    Rational column;
    for (std::size_t i = 0; i < scenario.num_users(); ++i) {
      const auto d = scenario.users[i].demand[r];
      if (d != 0) column += Rational(d) / ds[i].share;
    }
    if (column.is_zero()) continue;
    Rational candidate = Rational(scenario.resources[r]) / column;
    if (!k || candidate < *k) k = candidate;
  }
  return *k;
}

PdrfResult pdrf_allocate(const Scenario& scenario) {
  PdrfResult result;
  auto pre = precompute(scenario, result.counters);
  const auto n = scenario.num_users();
  const auto m = scenario.num_resources();

  std::vector<std::int64_t> tasks(n);
  const Rational scaled = pre.k * pre.ds_star;
  for (std::size_t i = 0; i < n; ++i) {
    tasks[i] = (scaled / pre.ds[i]).floor_int64();
    result.per_user_multiplier[scenario.users[i].id] = tasks[i];
  }
  // u_i = t_i * D_i and C += u_i
  result.counters.multiplications += 2 * n * m;
  result.counters.divisions += n;

  result.k = pre.k;
  result.ds_star = pre.ds_star;
  result.allocation = make_allocation(scenario, tasks);
  return result;
}

Allocation finishing_pass(const Scenario& scenario, const PdrfResult& result) {
  const auto n = scenario.num_users();
  const auto m = scenario.num_resources();
  if (result.allocation.tasks.size() != n) throw std::invalid_argument("result does not match scenario");
  auto tasks = tasks_in_order(scenario, result.allocation);
  const auto ds = dominant_shares(scenario);

  std::vector<Rational> allocated(n);
  for (std::size_t i = 0; i < n; ++i) allocated[i] = ds[i].share * Rational(tasks[i]);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (auto c = allocated[a] <=> allocated[b]; c != 0) return c < 0;
    if (auto c = ds[a].share <=> ds[b].share; c != 0) return c > 0;
    return scenario.users[a].id < scenario.users[b].id;
  });

  ResourceVector residual = result.allocation.residual;
  for (auto i : order) {
    const auto& demand = scenario.users[i].demand;
    bool fits = true;
    for (std::size_t r = 0; r < m && fits; ++r) fits = demand[r] <= residual[r];
    if (!fits) continue;
    for (std::size_t r = 0; r < m; ++r) residual[r] -= demand[r];
    ++tasks[i];
  }
  return make_allocation(scenario, tasks);
}

PdrfFloatResult pdrf_allocate_float(const Scenario& scenario, KForm form) {
  require_valid(scenario, WeightMode::kNormalized);
  const auto n = scenario.num_users();
  const auto m = scenario.num_resources();

  std::vector<double> ds(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& user = scenario.users[i];
    for (std::size_t r = 0; r < m; ++r) {
      if (user.demand[r] == 0) continue;
      double fd = static_cast<double>(user.demand[r]) / static_cast<double>(scenario.resources[r]);
      if (user.weight) fd /= (*user.weight)[r].to_double();
      ds[i] = std::max(ds[i], fd);
    }
  }
  const double ds_star = *std::max_element(ds.begin(), ds.end());

  double k = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < m; ++r) {
    double column = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = static_cast<double>(scenario.users[i].demand[r]);
      column += form == KForm::kUnsimplified ? (ds_star / ds[i]) * d : d / ds[i];
    }
    if (column > 0.0) k = std::min(k, static_cast<double>(scenario.resources[r]) / column);
  }

  PdrfFloatResult out;
  out.k = k;
  out.tasks.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double multiple = form == KForm::kUnsimplified ? k * (ds_star / ds[i]) : k / ds[i];
    out.tasks[i] = static_cast<std::int64_t>(std::floor(multiple));
  }
  return out;
}

}  // namespace drfkit

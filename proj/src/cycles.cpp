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

#include "drfkit/cycles.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "drfkit/shares.hpp"

namespace drfkit {

Rational rational_lcm(std::span<const Rational> values) {
  if (values.empty()) throw std::invalid_argument("lcm of an empty set");
  BigInt num = 1;
  BigInt den = 0;
  for (const auto& v : values) {
    if (v.sign() <= 0) throw std::invalid_argument("lcm needs positive values, got " + v.to_string());
    num = lcm(num, v.numerator());
    den = gcd(den, v.denominator());
  }
  return Rational(num, den);
}

namespace {

ExtraOccurrencePattern extra_pattern(const UserId& user, const Rational& ratio) {
  ExtraOccurrencePattern out;
  out.user = user;
  out.ratio = ratio;
  out.fractional_part = ratio - Rational(ratio.floor(), BigInt(1));
  const BigInt& p = out.fractional_part.numerator();
  const BigInt& q = out.fractional_part.denominator();
  out.period = q;

  // The t-th extra turn lands on subcycle floor((t - 1) q / p) + 1.
  BigInt listed = p;
  if (listed > kMaxListedExtraPositions) {
    listed = kMaxListedExtraPositions;
    out.truncated = true;
  }
  const auto count = to_int64(listed);
  for (std::int64_t t = 1; t <= count; ++t) {
    BigInt pos = BigInt(static_cast<long>(t - 1)) * q;
    mpz_fdiv_q(pos.get_mpz_t(), pos.get_mpz_t(), p.get_mpz_t());
    out.extra_positions.push_back(to_int64(pos) + 1);
  }
  for (std::size_t t = 1; t < out.extra_positions.size(); ++t) {
    out.gaps.push_back(out.extra_positions[t] - out.extra_positions[t - 1]);
  }
  if (!out.truncated && q.fits_slong_p()) {
    // wrap into the next period
    out.gaps.push_back(q.get_si() + 1 - out.extra_positions.back());
  }
  return out;
}

}  // namespace

CycleProfile cycle_profile(const Scenario& scenario) {
  require_valid(scenario);
  std::vector<Rational> ds;
  for (const auto& share : dominant_shares(scenario)) ds.push_back(share.share);
  const Rational ds_star = *std::max_element(ds.begin(), ds.end());

  CycleProfile out;
  out.lcm_ds = rational_lcm(ds);
  out.full_length = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& id = scenario.users[i].id;
    Rational occurrences = out.lcm_ds / ds[i];
    out.occurrences[id] = occurrences.numerator();
    out.full_length += occurrences.numerator();

    Rational ratio = ds_star / ds[i];
    const auto basic = ratio.floor_int64();
    out.basic_occurrences[id] = basic;
    out.basic_length += basic;
    if (!ratio.is_integer()) out.extra_occurrences.push_back(extra_pattern(id, ratio));
  }
  return out;
}

CycleDecomposition decompose_higher_order(const Scenario& scenario) {
  require_valid(scenario);
  const std::size_t m = scenario.num_resources();
  std::vector<Rational> ds;
  for (const auto& share : dominant_shares(scenario)) ds.push_back(share.share);

  CycleDecomposition out;
  out.residual = scenario.resources;
  std::vector<std::size_t> active(scenario.num_users());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;

  while (!active.empty()) {
    Rational ds_star = ds[active.front()];
    for (auto i : active) ds_star = std::max(ds_star, ds[i]);

    std::vector<Rational> ratio;
    bool exact = true;
    for (auto i : active) {
      ratio.push_back(ds_star / ds[i]);
      exact = exact && ratio.back().is_integer();
    }

    CycleLayer layer;
    ResourceVector per_iteration(m, 0);
    for (std::size_t a = 0; a < active.size(); ++a) {
      const auto i = active[a];
      const auto& id = scenario.users[i].id;
      std::int64_t turns = 1;
      if (ds[i] != ds_star) turns = exact ? ratio[a].floor_int64() : to_int64(ratio[a].ceil()) - 1;
      layer.active.push_back(id);
      layer.occurrences[id] = turns;
      layer.basic_occurrences[id] = ratio[a].floor_int64();
      layer.deviates_from_basic = layer.deviates_from_basic || turns != layer.basic_occurrences[id];
      for (std::size_t r = 0; r < m; ++r) per_iteration[r] += turns * scenario.users[i].demand[r];
    }

    std::optional<Rational> k;
    for (std::size_t r = 0; r < m; ++r) {
      if (per_iteration[r] == 0) continue;
      Rational candidate(out.residual[r], per_iteration[r]);
      if (!k || candidate < *k) k = candidate;
    }
    layer.k = *k;
    layer.iterations = k->floor_int64();

    if (layer.iterations >= 1) {
      layer.consumed.resize(m);
      for (std::size_t r = 0; r < m; ++r) {
        layer.consumed[r] = layer.iterations * per_iteration[r];
        out.residual[r] -= layer.consumed[r];
      }
      out.layers.push_back(std::move(layer));
    } else if (!out.layers.empty()) {
      break;
    }

    std::erase_if(active, [&](std::size_t i) { return ds[i] == ds_star; });
  }
  return out;
}

}  // namespace drfkit

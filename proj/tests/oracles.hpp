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

// Test-only reference computations, independent of drfkit::Rational and
// the allocators: fractions are int128 pairs and DRF is a
// global sort of every task request instead of a heap.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "drfkit/scenario.hpp"

namespace oracle {

using i128 = __int128;

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Frac {
  i128 num = 0;
  i128 den = 1;

  Frac() = default;
  Frac(i128 n, i128 d = 1) : num(n), den(d) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Frac operator+(Frac a, Frac b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Frac operator-(Frac a, Frac b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Frac operator*(Frac a, Frac b) { return {a.num * b.num, a.den * b.den}; }
  friend Frac operator/(Frac a, Frac b) { return {a.num * b.den, a.den * b.num}; }
  friend bool operator<(Frac a, Frac b) { return a.num * b.den < b.num * a.den; }
  friend bool operator==(Frac a, Frac b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<=(Frac a, Frac b) { return !(b < a); }
  std::int64_t floor() const {
    i128 q = num / den;
    if ((num % den != 0) && (num < 0)) --q;
    return static_cast<std::int64_t>(q);
  }
  std::string str() const {
    auto s = std::to_string(static_cast<long long>(num));
    return den == 1 ? s : s + "/" + std::to_string(static_cast<long long>(den));
  }
};

inline Frac dominant_share(const drfkit::DemandVector& d, const drfkit::ResourceVector& cap) {
  Frac best(0);
  for (std::size_t r = 0; r < d.size(); ++r) {
    if (d[r] == 0) continue;
    Frac fd(d[r], cap[r]);
    if (best < fd) best = fd;
  }
  return best;
}

/// Progressive filling as a global sort: the j-th request of user i is made
/// at allocated share (j-1)*ds_i; requests are served in (share asc, ds desc,
/// id asc) order. With removal a failed request drops the user's later
/// requests; without removal the first failure stops everything.
inline std::vector<std::int64_t> drf_by_sorting(const drfkit::Scenario& s, bool remove_saturated,
                                                std::size_t* iterations = nullptr) {
  const auto n = s.users.size();
  const auto m = s.resources.size();
  struct Request {
    Frac level;
    Frac ds;
    std::string id;
    std::size_t user;
  };
  std::vector<Request> requests;
  for (std::size_t i = 0; i < n; ++i) {
    Frac ds = dominant_share(s.users[i].demand, s.resources);
    std::int64_t max_tasks = INT64_MAX;
    for (std::size_t r = 0; r < m; ++r) {
      if (s.users[i].demand[r] > 0) max_tasks = std::min(max_tasks, s.resources[r] / s.users[i].demand[r]);
    }
    // includes one request past the last that fits
    for (std::int64_t j = 0; j <= max_tasks; ++j) requests.push_back({Frac(j) * ds, ds, s.users[i].id, i});
  }
  std::sort(requests.begin(), requests.end(), [](const Request& a, const Request& b) {
    if (!(a.level == b.level)) return a.level < b.level;
    if (!(a.ds == b.ds)) return b.ds < a.ds;
    return a.id < b.id;
  });

  std::vector<std::int64_t> tasks(n, 0);
  std::vector<bool> saturated(n, false);
  drfkit::ResourceVector residual = s.resources;
  std::size_t count = 0;
  for (const auto& req : requests) {
    if (saturated[req.user]) continue;
    const auto& d = s.users[req.user].demand;
    bool fits = true;
    for (std::size_t r = 0; r < m; ++r) fits = fits && d[r] <= residual[r];
    if (!fits) {
      if (!remove_saturated) break;
      saturated[req.user] = true;
      continue;
    }
    for (std::size_t r = 0; r < m; ++r) residual[r] -= d[r];
    ++tasks[req.user];
    ++count;
  }
  if (iterations) *iterations = count;
  return tasks;
}

/// Single-resource max-min fill over amounts: the unit goes to the user
/// with the smallest allocated amount (ties: larger demand, then id).
inline std::vector<std::int64_t> single_resource_max_min(const drfkit::Scenario& s) {
  const auto n = s.users.size();
  std::vector<std::int64_t> tasks(n, 0);
  std::vector<bool> done(n, false);
  std::int64_t residual = s.resources[0];
  for (;;) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (pick == n) {
        pick = i;
        continue;
      }
      const auto ai = tasks[i] * s.users[i].demand[0];
      const auto ap = tasks[pick] * s.users[pick].demand[0];
      const auto key_i = std::make_tuple(ai, -s.users[i].demand[0], s.users[i].id);
      const auto key_p = std::make_tuple(ap, -s.users[pick].demand[0], s.users[pick].id);
      if (key_i < key_p) pick = i;
    }
    if (pick == n) break;
    if (s.users[pick].demand[0] > residual) {
      done[pick] = true;
      continue;
    }
    residual -= s.users[pick].demand[0];
    ++tasks[pick];
  }
  return tasks;
}

/// PDRF cycle factor from its definition, in int128 fractions.
inline Frac pdrf_k(const drfkit::Scenario& s) {
  std::vector<Frac> ds;
  Frac star(0);
  for (const auto& u : s.users) {
    ds.push_back(dominant_share(u.demand, s.resources));
    if (star < ds.back()) star = ds.back();
  }
  bool have = false;
  Frac k;
  for (std::size_t r = 0; r < s.resources.size(); ++r) {
    Frac column(0);
    for (std::size_t i = 0; i < s.users.size(); ++i) column = column + star / ds[i] * Frac(s.users[i].demand[r]);
    if (column.num == 0) continue;
    Frac candidate = Frac(s.resources[r]) / column;
    if (!have || candidate < k) {
      k = candidate;
      have = true;
    }
  }
  return k;
}

/// Smallest positive multiple of values[0] that every value divides.
inline Frac lcm_by_search(const std::vector<Frac>& values) {
  for (std::int64_t c = 1;; ++c) {
    Frac q = Frac(c) * values[0];
    bool ok = true;
    for (const auto& v : values) ok = ok && (q / v).den == 1;
    if (ok) return q;
  }
}

/// Small random scenario: <= max_users users, <= max_resources resources,
/// demands in [min_demand, max_demand], reserves in [1, max_reserve].
inline drfkit::Scenario random_scenario(std::mt19937_64& rng, std::size_t max_users, std::size_t max_resources,
                                        std::int64_t max_demand, std::int64_t max_reserve, std::int64_t min_demand = 1) {
  std::uniform_int_distribution<std::size_t> nu(1, max_users), nr(1, max_resources);
  std::uniform_int_distribution<std::int64_t> dd(min_demand, max_demand), rr(1, max_reserve);
  drfkit::Scenario s;
  const auto n = nu(rng), m = nr(rng);
  s.resources.resize(m);
  for (auto& r : s.resources) r = rr(rng);
  for (std::size_t i = 0; i < n; ++i) {
    drfkit::UserDemand u;
    u.id = "u" + std::to_string(i);
    u.demand.resize(m);
    do {
      for (auto& d : u.demand) d = dd(rng);
    } while (std::all_of(u.demand.begin(), u.demand.end(), [](auto d) { return d == 0; }));
    s.users.push_back(std::move(u));
  }
  return s;
}

}  // namespace oracle

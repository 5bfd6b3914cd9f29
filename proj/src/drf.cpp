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

#include "drfkit/drf.hpp"

#include <queue>
#include <sstream>
#include <stdexcept>

#include "drfkit/shares.hpp"

namespace drfkit {

const char* to_string(HaltReason reason) {
  switch (reason) {
    case HaltReason::kResourceExhausted: return "resource-exhausted";
    case HaltReason::kAllSaturated: return "all-saturated";
  }
  return "unknown";
}

HaltReason parse_halt_reason(std::string_view text) {
  if (text == "resource-exhausted") return HaltReason::kResourceExhausted;
  if (text == "all-saturated") return HaltReason::kAllSaturated;
  throw std::invalid_argument("unknown halt reason '" + std::string(text) + "'");
}

namespace {

bool fits(const DemandVector& demand, const ResourceVector& residual) {
  for (std::size_t r = 0; r < demand.size(); ++r) {
    if (demand[r] > residual[r]) return false;
  }
  return true;
}

}  // namespace

DrfResult drf_allocate(const Scenario& scenario, const DrfOptions& options) {
  require_valid(scenario);
  const std::size_t n = scenario.num_users();
  const std::size_t m = scenario.num_resources();
  const auto per_task = dominant_shares(scenario);

  std::vector<Rational> allocated(n);
  std::vector<std::int64_t> tasks(n, 0);
  ResourceVector residual = scenario.resources;

  // std::priority_queue pops the "largest"; invert so the least allocated
  // share comes out first.
  auto after = [&](std::size_t a, std::size_t b) {
    if (auto c = allocated[a] <=> allocated[b]; c != 0) return c > 0;
    if (auto c = per_task[a].share <=> per_task[b].share; c != 0) return c < 0;
    return scenario.users[a].id > scenario.users[b].id;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(after)> heap(after);

  DrfResult result;
  for (std::size_t i = 0; i < n; ++i) {
    heap.push(i);
    ++result.counters.heap_pushes;
  }

  auto& trace = result.trace;
  trace.halt_reason = HaltReason::kAllSaturated;
  while (!heap.empty()) {
    std::size_t i = heap.top();
    heap.pop();
    ++result.counters.heap_pops;
    ++result.counters.fit_checks;

    const auto& demand = scenario.users[i].demand;
    if (!fits(demand, residual)) {
      if (!options.removes_saturated()) {
        trace.halt_reason = HaltReason::kResourceExhausted;
        break;
      }
      trace.saturations.push_back({trace.iterations, scenario.users[i].id});
      continue;
    }

    for (std::size_t r = 0; r < m; ++r) residual[r] -= demand[r];
    ++tasks[i];
    allocated[i] += per_task[i].share;
    ++trace.iterations;
    if (options.collect_trace) trace.steps.push_back({trace.iterations, scenario.users[i].id, allocated[i]});
    heap.push(i);
    ++result.counters.heap_pushes;
  }

  result.allocation = make_allocation(scenario, tasks);
  return result;
}

Rational predicted_iterations(const Scenario& scenario) {
  require_valid(scenario);
  const auto n = static_cast<std::int64_t>(scenario.num_users());
  bool found = false;
  Rational best;
  for (std::size_t r = 0; r < scenario.num_resources(); ++r) {
    std::int64_t total = 0;
    for (const auto& user : scenario.users) total += user.demand[r];
    if (total == 0) continue;
    // capacity / (total / n)
    Rational estimate = Rational(scenario.resources[r]) * Rational(n) / Rational(total);
    if (!found || estimate < best) {
      best = estimate;
      found = true;
    }
  }
  return best;
}

std::string format_trace(const DrfTrace& trace) {
  std::ostringstream os;
  for (const auto& step : trace.steps) {
    os << step.iteration << '\t' << step.user << '\t' << step.allocated_share << '\n';
  }
  os << "halt\t" << to_string(trace.halt_reason) << '\n';
  return os.str();
}

DrfTrace parse_trace(std::string_view text) {
  DrfTrace trace;
  bool halted = false;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (halted) throw std::invalid_argument("trace continues after the halt line");
    auto tab1 = line.find('\t');
    if (tab1 == std::string::npos) throw std::invalid_argument("malformed trace line: " + line);
    if (line.compare(0, tab1, "halt") == 0) {
      trace.halt_reason = parse_halt_reason(std::string_view(line).substr(tab1 + 1));
      halted = true;
      continue;
    }
    auto tab2 = line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) throw std::invalid_argument("malformed trace line: " + line);
    DrfStep step;
    step.iteration = std::stoull(line.substr(0, tab1));
    step.user = line.substr(tab1 + 1, tab2 - tab1 - 1);
    step.allocated_share = Rational::parse(std::string_view(line).substr(tab2 + 1));
    trace.steps.push_back(std::move(step));
  }
  if (!halted) throw std::invalid_argument("trace has no halt line");
  trace.iterations = trace.steps.size();
  return trace;
}

}  // namespace drfkit

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

#include "drfkit/scenario.hpp"

#include <set>
#include <sstream>

namespace drfkit {

bool Scenario::weighted() const {
  for (const auto& user : users) {
    if (user.weight) return true;
  }
  return false;
}

std::size_t Scenario::index_of(const UserId& id) const {
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (users[i].id == id) return i;
  }
  throw std::out_of_range("unknown user id '" + id + "'");
}

Allocation make_allocation(const Scenario& scenario, std::span<const std::int64_t> tasks) {
  if (tasks.size() != scenario.num_users()) throw std::invalid_argument("task count per user expected");
  const std::size_t m = scenario.num_resources();
  Allocation out;
  out.consumed.assign(m, 0);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& user = scenario.users[i];
    ResourceVector amounts(m);
    for (std::size_t r = 0; r < m; ++r) {
      amounts[r] = tasks[i] * user.demand[r];
      out.consumed[r] += amounts[r];
    }
    out.tasks[user.id] = tasks[i];
    out.per_user_amounts[user.id] = std::move(amounts);
  }
  out.residual.resize(m);
  for (std::size_t r = 0; r < m; ++r) out.residual[r] = scenario.resources[r] - out.consumed[r];
  return out;
}

std::vector<std::int64_t> tasks_in_order(const Scenario& scenario, const Allocation& allocation) {
  std::vector<std::int64_t> out;
  out.reserve(scenario.num_users());
  for (const auto& user : scenario.users) out.push_back(allocation.tasks.at(user.id));
  return out;
}

const char* to_string(IssueCode code) {
  switch (code) {
    case IssueCode::kNoResources: return "no-resources";
    case IssueCode::kNoUsers: return "no-users";
    case IssueCode::kNegativeCapacity: return "negative-capacity";
    case IssueCode::kDuplicateId: return "duplicate-id";
    case IssueCode::kEmptyId: return "empty-id";
    case IssueCode::kLengthMismatch: return "length-mismatch";
    case IssueCode::kNegativeDemand: return "negative-demand";
    case IssueCode::kZeroDemand: return "zero-demand";
    case IssueCode::kInfeasibleDemand: return "infeasible-demand";
    case IssueCode::kWeightLengthMismatch: return "weight-length-mismatch";
    case IssueCode::kNonPositiveWeight: return "non-positive-weight";
    case IssueCode::kPartialWeights: return "partial-weights";
    case IssueCode::kUnnormalizedWeights: return "unnormalized-weights";
  }
  return "unknown";
}

std::vector<ValidationIssue> validate_scenario(const Scenario& scenario, WeightMode mode) {
  std::vector<ValidationIssue> issues;
  auto add = [&issues](IssueCode code, std::string message) { issues.push_back({code, std::move(message)}); };

  const std::size_t m = scenario.num_resources();
  if (m == 0) add(IssueCode::kNoResources, "scenario has no resources");
  if (scenario.users.empty()) add(IssueCode::kNoUsers, "scenario has no users");
  for (std::size_t r = 0; r < m; ++r) {
    if (scenario.resources[r] < 0) {
      add(IssueCode::kNegativeCapacity, "resource " + std::to_string(r) + " has negative capacity");
    }
  }

  std::set<UserId> seen;
  std::size_t with_weight = 0;
  for (const auto& user : scenario.users) {
    const std::string who = "user '" + user.id + "'";
    if (user.id.empty()) add(IssueCode::kEmptyId, "user with empty id");
    if (!seen.insert(user.id).second) add(IssueCode::kDuplicateId, "duplicate user id '" + user.id + "'");

    if (user.demand.size() != m) {
      add(IssueCode::kLengthMismatch, who + " demand has " + std::to_string(user.demand.size()) +
                                          " entries, scenario has " + std::to_string(m) + " resources");
    } else {
      bool any_positive = false;
      for (std::size_t r = 0; r < m; ++r) {
        if (user.demand[r] < 0) {
          add(IssueCode::kNegativeDemand, who + " has negative demand on resource " + std::to_string(r));
        } else if (user.demand[r] > 0) {
          any_positive = true;
          if (scenario.resources[r] == 0) {
            add(IssueCode::kInfeasibleDemand,
                who + " demands resource " + std::to_string(r) + " which has zero capacity");
          }
        }
      }
      if (!any_positive) add(IssueCode::kZeroDemand, who + " has an all-zero demand vector");
    }

    if (user.weight) {
      ++with_weight;
      if (user.weight->size() != m) {
        add(IssueCode::kWeightLengthMismatch, who + " weight has " + std::to_string(user.weight->size()) +
                                                  " entries, scenario has " + std::to_string(m) + " resources");
      }
      for (const auto& w : *user.weight) {
        if (w.sign() <= 0) {
          add(IssueCode::kNonPositiveWeight, who + " has a non-positive weight " + w.to_string());
          break;
        }
      }
    }
  }

  if (with_weight != 0 && with_weight != scenario.users.size()) {
    add(IssueCode::kPartialWeights, "either every user carries a weight vector or none does");
  } else if (with_weight != 0 && mode == WeightMode::kNormalized) {
    for (std::size_t r = 0; r < m; ++r) {
      Rational sum;
      bool complete = true;
      for (const auto& user : scenario.users) {
        if (user.weight->size() != m) {
          complete = false;
          break;
        }
        sum += (*user.weight)[r];
      }
      if (complete && sum != Rational(1)) {
        add(IssueCode::kUnnormalizedWeights,
            "weights on resource " + std::to_string(r) + " sum to " + sum.to_string() + ", expected 1");
      }
    }
  }
  return issues;
}

namespace {

std::string describe(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "invalid scenario:";
  for (const auto& issue : issues) os << "\n  [" << to_string(issue.code) << "] " << issue.message;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::invalid_argument(describe(issues)), issues_(std::move(issues)) {}

void require_valid(const Scenario& scenario, WeightMode mode) {
  auto issues = validate_scenario(scenario, mode);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

}  // namespace drfkit

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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "drfkit/rational.hpp"

namespace drfkit {

using Amount = std::int64_t;
using UserId = std::string;

/// Per-resource capacities (or consumption), in abstract resource units.
using ResourceVector = std::vector<Amount>;
/// Per-resource requirement of a single task.
using DemandVector = std::vector<Amount>;
/// Per-resource weight of a user; every entry strictly positive.
using WeightVector = std::vector<Rational>;

struct UserDemand {
  UserId id;
  DemandVector demand;
  std::optional<WeightVector> weight;
};

struct Scenario {
  ResourceVector resources;
  std::vector<UserDemand> users;

  std::size_t num_resources() const { return resources.size(); }
  std::size_t num_users() const { return users.size(); }
  bool weighted() const;
  /// Index of the user with this id; throws std::out_of_range when absent.
  std::size_t index_of(const UserId& id) const;
};

/// Result of an integral allocator. Maps are keyed by user id so iteration
/// order is deterministic.
struct Allocation {
  std::map<UserId, std::int64_t> tasks;
  ResourceVector consumed;
  ResourceVector residual;
  std::map<UserId, ResourceVector> per_user_amounts;
};

/// Builds an Allocation from task counts indexed like scenario.users.
Allocation make_allocation(const Scenario& scenario, std::span<const std::int64_t> tasks);

/// Task counts of `allocation` in scenario.users order.
std::vector<std::int64_t> tasks_in_order(const Scenario& scenario, const Allocation& allocation);

enum class IssueCode {
  kNoResources,
  kNoUsers,
  kNegativeCapacity,
  kDuplicateId,
  kEmptyId,
  kLengthMismatch,
  kNegativeDemand,
  kZeroDemand,
  kInfeasibleDemand,
  kWeightLengthMismatch,
  kNonPositiveWeight,
  kPartialWeights,
  kUnnormalizedWeights,
};

const char* to_string(IssueCode code);

struct ValidationIssue {
  IssueCode code;
  std::string message;
};

enum class WeightMode {
  /// DRF: any positive weights.
  kAnyPositive,
  /// PDRF / EDRF: for every resource the weights of all users sum to 1.
  kNormalized,
};

/// Every violated invariant of the scenario; empty means valid.
std::vector<ValidationIssue> validate_scenario(const Scenario& scenario,
                                               WeightMode mode = WeightMode::kAnyPositive);

class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
  std::vector<ValidationIssue> issues_;
};

/// Throws ValidationError when validate_scenario reports anything.
void require_valid(const Scenario& scenario, WeightMode mode = WeightMode::kAnyPositive);

}  // namespace drfkit

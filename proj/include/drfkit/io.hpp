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

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "drfkit/cycles.hpp"
#include "drfkit/edrf.hpp"
#include "drfkit/scenario.hpp"

namespace drfkit {

inline constexpr int kOutputSchemaVersion = 1;

/// Malformed scenario document. `field()` names the offending location,
/// e.g. "users[1].demand[0]".
class ScenarioFormatError : public std::invalid_argument {
public:
  ScenarioFormatError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

/// Strict JSON scenario reader:
///
///   {
///     "resources": [9, 18],
///     "users": [
///       {"id": "A", "demand": [1, 4], "weight": ["1/2", "1/2"]},
///       {"id": "B", "demand": [3, 1]}
///     ]
///   }
///
/// An optional top-level "schema_version" must equal 1. Any other key is
/// rejected. Structural checks only; call validate_scenario for invariants.
Scenario parse_scenario(std::string_view text);
std::string scenario_document(const Scenario& scenario);

/// {"schema_version", "algorithm", "tasks", "per_user_amounts", "consumed",
/// "residual"} plus string-valued `extra` fields (e.g. "k").
std::string allocation_document(const Allocation& allocation, std::string_view algorithm,
                                const std::map<std::string, std::string>& extra = {});

/// Fraction-valued amounts rendered as "p/q" strings, plus per-round records.
std::string divisible_document(const DivisibleAllocation& allocation);

std::string cycles_document(const CycleProfile& profile, const CycleDecomposition* decomposition = nullptr);

}  // namespace drfkit

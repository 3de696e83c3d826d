// Copyright 2026 The hqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "hqc/analysis.hpp"
#include "hqc/problems.hpp"
#include "hqc/solvers.hpp"

namespace hqc {

inline constexpr const char* kInstanceSchema = "hqc.instance";
inline constexpr const char* kSuiteSchema = "hqc.suite";
inline constexpr const char* kSolverSchema = "hqc.solver";
inline constexpr int kSchemaVersion = 1;

enum class ProblemKind { Simon, Serial, SS, SCS };
const char* to_string(ProblemKind p);
// Accepts simon, serial, ss, scs; throws Error(Precondition) otherwise.
ProblemKind parse_problem(const std::string& name);

struct InstanceRecord {
  std::uint64_t seed = 0;
  std::variant<SimonInstance, SerialInstance, SSInstance, SCSInstance> instance;

  ProblemKind problem() const { return static_cast<ProblemKind>(instance.index()); }
};

// Canonical JSON: fixed key order, two-space indent, bottom entries as null.
std::string to_json(const InstanceRecord& record);
// Rebuilds every derived table from the primary ones and rejects the record
// (Error(Validation)) if a stored table disagrees.
InstanceRecord instance_from_json(const std::string& text);

std::string to_json(const SuiteReport& report);
SuiteReport suite_from_json(const std::string& text);

// Transcript and ledger are summarized by their sizes.
std::string to_json(const SolverReport& report);

}  // namespace hqc
